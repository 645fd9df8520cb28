#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "copa/classifiers/ensemble.hpp"
#include "copa/classifiers/methods.hpp"
#include "copa/eval/curves.hpp"

namespace copa {

struct EvalConfig {
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  MethodParams params;
  bool exclude_general = false;
  std::vector<double> grid = threshold_grid(100);
  unsigned threads = 0;  // 0: hardware concurrency
};

class FoldError : public DomainError {
 public:
  FoldError(const std::string& motion_id, const std::string& what)
      : DomainError("fold " + motion_id + ": " + what), motion_id_(motion_id) {}
  const std::string& motion_id() const noexcept { return motion_id_; }

 private:
  std::string motion_id_;
};

struct LooResult {
  std::vector<ScoreMatrix> methods;  // config order
  ScoreMatrix ensemble;
};

// Scores every motion with models trained on all other motions. Each fold
// also drops the held-out topic from c_t and from the KNN neighbour pool.
// CoPAs a method is not eligible for are left as abstentions. Folds are
// independent and run on a small thread pool; results do not depend on the
// thread count.
inline LooResult leave_one_out(const Dataset& ds, const EvalConfig& cfg, const Resources& res) {
  if (ds.motions().size() < 2) throw DomainError("leave-one-out needs at least two motions");
  for (Method m : cfg.methods)
    if (auto missing = missing_inputs(m, res, cfg.params); !missing.empty())
      throw ConfigError("method " + std::string(to_string(m)) + " needs " + missing);

  std::vector<std::string> motion_ids, copa_ids;
  for (const Motion& m : ds.motions()) motion_ids.push_back(m.id);
  for (const Copa& c : ds.copas()) copa_ids.push_back(c.id);

  std::vector<std::vector<bool>> eligible;
  LooResult out;
  for (Method m : cfg.methods) {
    out.methods.emplace_back(std::string(to_string(m)), motion_ids, copa_ids);
    eligible.push_back(eligible_copas(m, ds, cfg.params));
  }

  const std::size_t n = ds.motions().size();
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::vector<ScoreRow>> rows(n);
  auto run_fold = [&](std::size_t i) {
    const Motion& held = ds.motions()[i];
    try {
      Dataset train = ds.without(held.id);
      FeatureExclusions ex;
      ex.topics.insert(held.topic);
      for (std::size_t k = 0; k < cfg.methods.size(); ++k) {
        ScoreRow row = train_and_score(cfg.methods[k], train, held, res, cfg.params, ex);
        for (std::size_t j = 0; j < row.size(); ++j)
          if (!eligible[k][j]) row[j] = std::nullopt;
        rows[i].push_back(std::move(row));
      }
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) run_fold(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) run_fold(i);
      });
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw FoldError(motion_ids[i], e.what());
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < cfg.methods.size(); ++k) out.methods[k].set_row(i, rows[i][k]);

  if (!out.methods.empty())
    out.ensemble = ensemble(out.methods);
  else
    out.ensemble = ScoreMatrix("ensemble", motion_ids, copa_ids);
  return out;
}

}  // namespace copa
