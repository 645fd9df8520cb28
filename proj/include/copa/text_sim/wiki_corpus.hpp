#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "copa/error.hpp"
#include "copa/kb/io.hpp"
#include "copa/text.hpp"
#include "copa/text_sim/hypergeom.hpp"

namespace copa {

struct WikiArticle {
  std::map<std::string, long> link_counts;  // linked title -> occurrences in the article
  std::set<std::string> body_terms;
};

// Pre-extracted article records per topic plus link statistics over a pool of
// random background articles. Keys and terms are lowercased.
class WikiCorpus {
 public:
  WikiCorpus() = default;
  WikiCorpus(std::map<std::string, WikiArticle> articles, std::map<std::string, long> background_links,
             long background_total)
      : background_total_(background_total) {
    if (background_total_ < 0) throw ValidationError("wiki corpus: negative background total_links");
    long sum = 0;
    for (auto& [title, n] : background_links) {
      if (n < 0) throw ValidationError("wiki corpus: negative background count for '" + title + "'");
      sum += n;
      background_[to_lower(title)] += n;
    }
    if (sum > background_total_)
      throw ValidationError("wiki corpus: background link counts exceed total_links");
    for (auto& [topic, art] : articles) {
      WikiArticle norm;
      for (auto& [title, n] : art.link_counts) {
        if (n < 0) throw ValidationError("wiki corpus: negative link count in '" + topic + "'");
        norm.link_counts[to_lower(title)] += n;
      }
      for (const auto& t : art.body_terms) norm.body_terms.insert(to_lower(t));
      articles_[to_lower(topic)] = std::move(norm);
    }
  }

  const WikiArticle* article(std::string_view topic) const {
    auto it = articles_.find(to_lower(topic));
    return it == articles_.end() ? nullptr : &it->second;
  }
  const std::map<std::string, WikiArticle>& articles() const noexcept { return articles_; }
  long background_count(std::string_view title) const {
    auto it = background_.find(to_lower(title));
    return it == background_.end() ? 0 : it->second;
  }
  long background_total() const noexcept { return background_total_; }

 private:
  std::map<std::string, WikiArticle> articles_;
  std::map<std::string, long> background_;
  long background_total_ = 0;
};

// {"articles": {topic: {"link_counts": {title: n}, "body_terms": [..]}},
//  "background": {"link_counts": {title: n}, "total_links": N}}
inline WikiCorpus parse_wiki_corpus(const nlohmann::json& j) {
  try {
    std::map<std::string, WikiArticle> articles;
    for (const auto& [topic, rec] : j.at("articles").items()) {
      WikiArticle a;
      if (rec.contains("link_counts")) a.link_counts = rec.at("link_counts").get<std::map<std::string, long>>();
      if (rec.contains("body_terms")) a.body_terms = rec.at("body_terms").get<std::set<std::string>>();
      articles.emplace(topic, std::move(a));
    }
    std::map<std::string, long> bg;
    long total = 0;
    if (j.contains("background")) {
      const auto& b = j.at("background");
      if (b.contains("link_counts")) bg = b.at("link_counts").get<std::map<std::string, long>>();
      total = b.value("total_links", 0L);
    }
    return WikiCorpus(std::move(articles), std::move(bg), total);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("wiki corpus: ") + e.what());
  }
}

inline WikiCorpus load_wiki_corpus(const std::filesystem::path& path) {
  try {
    return parse_wiki_corpus(nlohmann::json::parse(detail::read_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

struct ScoredTitle {
  std::string title;
  double p_value;
};

// m_w: the linked titles of the topic's article ranked by how enriched they
// are relative to the background pool. For each title, k = count in the
// article, n = all link occurrences in the article, K = k + background count,
// N = n + background total. Ascending p-value, ties lexicographic.
inline std::vector<ScoredTitle> score_related_titles(std::string_view topic, const WikiCorpus& corpus) {
  const WikiArticle* art = corpus.article(topic);
  if (art == nullptr) throw UnknownTopic(std::string(topic));
  long n = 0;
  for (const auto& [t, c] : art->link_counts) n += c;
  std::vector<ScoredTitle> scored;
  for (const auto& [title, k] : art->link_counts) {
    if (k == 0) continue;
    long K = k + corpus.background_count(title);
    long N = n + corpus.background_total();
    scored.push_back({title, hypergeom_pvalue(k, n, K, N)});
  }
  std::sort(scored.begin(), scored.end(), [](const ScoredTitle& a, const ScoredTitle& b) {
    if (a.p_value != b.p_value) return a.p_value < b.p_value;
    return a.title < b.title;
  });
  return scored;
}

inline std::vector<std::string> topic_related_titles(std::string_view topic, const WikiCorpus& corpus,
                                                     std::size_t cap = 10) {
  auto scored = score_related_titles(topic, corpus);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < scored.size() && i < cap; ++i) out.push_back(std::move(scored[i].title));
  return out;
}

}  // namespace copa
