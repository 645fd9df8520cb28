#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "copa/classifiers/blacklist.hpp"
#include "copa/classifiers/score_matrix.hpp"
#include "copa/kb/dataset.hpp"
#include "copa/text.hpp"

namespace copa {

// Retrieved sentences per topic (topic keys lowercased).
class TopicSentenceCorpus {
 public:
  void add(std::string_view topic, std::string sentence) {
    if (sentence.empty()) throw ValidationError("sentence corpus: empty sentence for topic '" + std::string(topic) + "'");
    sentences_[to_lower(topic)].push_back(std::move(sentence));
  }

  const std::vector<std::string>& sentences(std::string_view topic) const {
    static const std::vector<std::string> none;
    auto it = sentences_.find(to_lower(topic));
    return it == sentences_.end() ? none : it->second;
  }

  std::size_t topic_count() const noexcept { return sentences_.size(); }

 private:
  std::map<std::string, std::vector<std::string>> sentences_;
};

// JSON lines: {"topic": str, "sentence": str}
inline TopicSentenceCorpus parse_sentence_corpus(std::istream& in, const std::string& source = "<stream>") {
  TopicSentenceCorpus corpus;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      corpus.add(j.at("topic").get<std::string>(), j.at("sentence").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return corpus;
}

inline TopicSentenceCorpus load_sentence_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_sentence_corpus(in, path.string());
}

// Multinomial naive Bayes over unigrams for one CoPA: sentences of member
// motions are the positive class, all other training sentences negative.
struct NBClassModel {
  double log_prior_pos = 0.0;
  double log_prior_neg = 0.0;
  std::map<std::string, double> log_p_pos;  // over the shared vocabulary
  std::map<std::string, double> log_p_neg;
};

struct NBModel {
  double alpha = 1.0;
  std::vector<std::string> copa_ids;
  std::vector<NBClassModel> per_copa;  // parallel to copa_ids
  Blacklist blacklist;
};

namespace detail {

using TokenCounts = std::map<std::string, double>;

inline void add_counts(TokenCounts& into, const TokenCounts& from, double sign = 1.0) {
  for (const auto& [w, n] : from) into[w] += sign * n;
}

}  // namespace detail

inline NBModel train_nb(const Dataset& train, const TopicSentenceCorpus& corpus, double alpha = 1.0) {
  if (!(alpha > 0.0)) throw DomainError("naive Bayes: alpha must be positive");
  NBModel model;
  model.alpha = alpha;
  model.blacklist = Blacklist::build(train);

  // Per motion: unigram counts and number of sentences.
  std::map<std::string, detail::TokenCounts> motion_counts;
  std::map<std::string, double> motion_sentences;
  detail::TokenCounts total;
  double total_sentences = 0.0;
  for (const Motion& m : train.motions()) {
    const auto& sents = corpus.sentences(m.topic);
    if (sents.empty()) continue;
    auto& counts = motion_counts[m.id];
    for (const auto& s : sents)
      for (const auto& w : tokenize(s)) counts[w] += 1.0;
    motion_sentences[m.id] = static_cast<double>(sents.size());
    detail::add_counts(total, counts);
    total_sentences += static_cast<double>(sents.size());
  }
  const double vocab = static_cast<double>(total.size());

  for (const Copa& c : train.copas()) {
    model.copa_ids.push_back(c.id);
    detail::TokenCounts pos;
    double pos_sentences = 0.0;
    for (const auto& id : c.motion_ids) {
      auto it = motion_counts.find(id);
      if (it == motion_counts.end()) continue;
      detail::add_counts(pos, it->second);
      pos_sentences += motion_sentences[id];
    }
    double pos_tokens = 0.0, neg_tokens = 0.0;
    for (const auto& [w, n] : total) {
      double p = pos.count(w) ? pos[w] : 0.0;
      pos_tokens += p;
      neg_tokens += n - p;
    }
    NBClassModel cm;
    const double neg_sentences = total_sentences - pos_sentences;
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    cm.log_prior_pos = pos_sentences > 0 ? std::log(pos_sentences / total_sentences) : kNegInf;
    cm.log_prior_neg = neg_sentences > 0 ? std::log(neg_sentences / total_sentences) : kNegInf;
    for (const auto& [w, n] : total) {
      double p = pos.count(w) ? pos[w] : 0.0;
      cm.log_p_pos[w] = std::log((p + alpha) / (pos_tokens + alpha * vocab));
      cm.log_p_neg[w] = std::log((n - p + alpha) / (neg_tokens + alpha * vocab));
    }
    model.per_copa.push_back(std::move(cm));
  }
  return model;
}

// P(positive | sentence); tokens outside the training vocabulary are ignored.
inline double nb_posterior(const NBClassModel& cm, std::string_view sentence) {
  double lp = cm.log_prior_pos, ln = cm.log_prior_neg;
  if (std::isinf(lp) && std::isinf(ln)) return 0.5;
  if (std::isinf(lp)) return 0.0;
  if (std::isinf(ln)) return 1.0;
  for (const auto& w : tokenize(sentence)) {
    auto ip = cm.log_p_pos.find(w);
    if (ip == cm.log_p_pos.end()) continue;
    lp += ip->second;
    ln += cm.log_p_neg.at(w);
  }
  return 1.0 / (1.0 + std::exp(ln - lp));
}

// Mean posterior over the topic's sentences; abstains when there are none.
inline ScoreRow predict_nb(const NBModel& model, const Motion& motion, const TopicSentenceCorpus& corpus) {
  ScoreRow row(model.copa_ids.size());
  const auto& sents = corpus.sentences(motion.topic);
  if (sents.empty()) return row;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (model.blacklist.blocks(model.copa_ids[j], motion.action)) {
      row[j] = 0.0;
      continue;
    }
    double sum = 0.0;
    for (const auto& s : sents) sum += nb_posterior(model.per_copa[j], s);
    row[j] = sum / static_cast<double>(sents.size());
  }
  return row;
}

}  // namespace copa
