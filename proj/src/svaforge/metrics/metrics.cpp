// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/metrics/metrics.hpp"

#include "svaforge/common/error.hpp"
#include "svaforge/sva/extract.hpp"
#include "svaforge/sva/lexer.hpp"

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace svaforge::metrics {

using boost::multiprecision::cpp_int;

namespace {

cpp_int binomial(uint32_t n, uint32_t k) {
  if (k > n)
    return 0;
  k = std::min(k, n - k);
  cpp_int r = 1;
  for (uint32_t i = 1; i <= k; ++i)
    r = r * (n - k + i) / i; // exact: r * (n-k+i) is divisible by i here
  return r;
}

} // namespace

Rational func_at_k_exact(uint32_t n, uint32_t c, uint32_t k) {
  if (k == 0 || k > n)
    throw Error(ErrorKind::InvalidArgument, "k must be in 1..n (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
  if (c > n)
    throw Error(ErrorKind::InvalidArgument, "c exceeds n");
  if (n - c < k)
    return 1;
  return Rational(1) - Rational(binomial(n - c, k), binomial(n, k));
}

Rational func_at_k_exact(const std::vector<EvalResult> &results, uint32_t k) {
  if (results.empty())
    throw Error(ErrorKind::InvalidArgument, "no evaluation results");
  Rational sum = 0;
  for (const auto &r : results)
    sum += func_at_k_exact(r.n, r.c, k);
  return sum / static_cast<unsigned>(results.size());
}

double func_at_k(const std::vector<EvalResult> &results, uint32_t k) {
  return func_at_k_exact(results, k).convert_to<double>();
}

std::vector<EvalResult> evaluate(const std::vector<Problem> &problems, llm::Gateway &gw, uint32_t n,
                                 const verify::Bound &bound) {
  llm::Sampling s = llm::Sampling::sampled(gw.profile().sampling, llm::kSampleTemperature);
  s.top_p = 0.95;
  std::vector<EvalResult> out;
  for (const auto &p : problems) {
    EvalResult r;
    r.problem_id = p.id;
    r.n = n;
    for (auto &sample : gw.sample_sva(p.design, {p.nl, llm::Provenance::Decomposed}, std::nullopt, n, s)) {
      SampleDetail d;
      if (!sample.error.empty()) {
        d.verdict = "error: " + sample.error;
      } else if (!sample.parsed) {
        d.verdict = "syntax";
      } else {
        d.syntax_ok = true;
        try {
          auto rep = verify::equivalent(*sample.parsed, p.ground_truth, bound, verify::DesignMode{&p.design});
          d.verdict = verify::outcome_name(rep.outcome);
          if (rep.positive())
            ++r.c;
        } catch (const Error &e) {
          d.verdict = std::string("error: ") + e.what();
        }
      }
      r.samples.push_back(std::move(d));
    }
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

using Counts = std::map<std::string, uint32_t>;

Counts ngram_counts(const std::string &doc, uint32_t n) {
  auto toks = sva::tokenize_lenient(doc);
  Counts c;
  if (n == 0 || toks.size() < n)
    return c;
  for (std::size_t i = 0; i + n <= toks.size(); ++i) {
    std::string g = toks[i];
    for (std::size_t j = 1; j < n; ++j)
      g += '\x1f' + toks[i + j];
    ++c[g];
  }
  return c;
}

struct Vec {
  std::vector<std::pair<std::size_t, double>> w; // sorted by term id
  double norm = 0;
};

double cosine_distance(const Vec &a, const Vec &b) {
  double dot = 0;
  std::size_t i = 0, j = 0;
  while (i < a.w.size() && j < b.w.size()) {
    if (a.w[i].first < b.w[j].first)
      ++i;
    else if (a.w[i].first > b.w[j].first)
      ++j;
    else
      dot += a.w[i++].second * b.w[j++].second;
  }
  double d = 1.0 - dot / (a.norm * b.norm);
  return std::clamp(d, 0.0, 1.0);
}

uint64_t uniform(boost::random::mt19937_64 &rng, uint64_t lo, uint64_t hi) {
  return boost::random::uniform_int_distribution<uint64_t>(lo, hi)(rng);
}

} // namespace

double tfidf_diversity(const std::vector<std::string> &corpus, const DiversityOptions &opts) {
  const std::size_t n_docs = corpus.size();
  if (n_docs < 2)
    throw Error(ErrorKind::InvalidArgument, "diversity needs at least two documents");
  std::vector<Counts> counts;
  counts.reserve(n_docs);
  std::map<std::string, uint32_t> df;
  for (const auto &doc : corpus) {
    counts.push_back(ngram_counts(doc, opts.n_gram));
    for (const auto &[g, _] : counts.back())
      ++df[g];
  }
  std::map<std::string, std::size_t> ids;
  for (const auto &[g, _] : df)
    ids.emplace(g, ids.size());
  std::vector<Vec> vecs(n_docs);
  for (std::size_t d = 0; d < n_docs; ++d) {
    double sq = 0;
    for (const auto &[g, tf] : counts[d]) {
      double w = tf * (std::log(static_cast<double>(n_docs) / df[g]) + 1.0);
      vecs[d].w.emplace_back(ids[g], w);
      sq += w * w;
    }
    vecs[d].norm = std::sqrt(sq);
  }

  // A document without any n-gram has a zero vector; it is at distance 0 from
  // a document with the same n-gram counts (another empty one) and 1 from
  // everything else. Equal count maps are at distance 0 exactly.
  auto distance = [&](std::size_t a, std::size_t b) {
    if (counts[a] == counts[b])
      return 0.0;
    if (vecs[a].w.empty() || vecs[b].w.empty())
      return 1.0;
    return cosine_distance(vecs[a], vecs[b]);
  };

  const uint64_t total = static_cast<uint64_t>(n_docs) * (n_docs - 1) / 2;
  std::vector<uint64_t> picks;
  if (total <= opts.pair_cap) {
    picks.resize(total);
    for (uint64_t p = 0; p < total; ++p)
      picks[p] = p;
  } else {
    // Floyd's sampling of pair_cap distinct pair indices.
    boost::random::mt19937_64 rng(opts.seed);
    std::set<uint64_t> chosen;
    for (uint64_t j = total - opts.pair_cap; j < total; ++j) {
      uint64_t t = uniform(rng, 0, j);
      if (!chosen.insert(t).second)
        chosen.insert(j);
    }
    picks.assign(chosen.begin(), chosen.end());
  }
  // Pair index p enumerates (0,1), (0,2), ..., (0,N-1), (1,2), ...
  std::vector<uint64_t> row_start(n_docs, 0);
  for (std::size_t i = 1; i < n_docs; ++i)
    row_start[i] = row_start[i - 1] + (n_docs - i);
  double sum = 0;
  for (uint64_t p : picks) {
    std::size_t i = static_cast<std::size_t>(std::upper_bound(row_start.begin(), row_start.end(), p) - row_start.begin() - 1);
    std::size_t j = i + 1 + static_cast<std::size_t>(p - row_start[i]);
    sum += distance(i, j);
  }
  return picks.empty() ? 0.0 : sum / static_cast<double>(picks.size());
}

std::vector<CurvePoint> diversity_curve(const std::vector<std::string> &corpus, const std::vector<std::size_t> &sizes,
                                        const DiversityOptions &opts) {
  std::vector<CurvePoint> out;
  for (std::size_t s : sizes) {
    if (s < 2 || s > corpus.size())
      continue;
    // Independent subset per size: a seeded partial Fisher-Yates shuffle.
    boost::random::mt19937_64 rng(opts.seed + s);
    std::vector<std::size_t> idx(corpus.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      idx[i] = i;
    std::vector<std::string> subset;
    for (std::size_t i = 0; i < s; ++i) {
      std::size_t j = static_cast<std::size_t>(uniform(rng, i, idx.size() - 1));
      std::swap(idx[i], idx[j]);
      subset.push_back(corpus[idx[i]]);
    }
    out.push_back({s, tfidf_diversity(subset, opts)});
  }
  return out;
}

std::string curve_csv(const std::vector<CurvePoint> &curve, uint64_t seed) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << "size,diversity,seed\n";
  for (const auto &p : curve)
    os << p.size << ',' << p.diversity << ',' << seed << '\n';
  return os.str();
}

std::vector<std::string> normalize_tokens(const std::string &text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      cur += static_cast<char>(std::tolower(c));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty())
    out.push_back(std::move(cur));
  return out;
}

namespace {

std::string join(const std::vector<std::string> &toks, std::size_t at, uint32_t n) {
  std::string g = toks[at];
  for (std::size_t j = 1; j < n; ++j)
    g += ' ' + toks[at + j];
  return g;
}

} // namespace

DecontamResult decontaminate(const std::vector<std::string> &train, const std::vector<std::string> &bench,
                             uint32_t n) {
  if (n == 0)
    throw Error(ErrorKind::InvalidArgument, "n-gram size must be positive");
  std::unordered_set<std::string> grams;
  for (const auto &b : bench) {
    auto toks = normalize_tokens(b);
    for (std::size_t i = 0; i + n <= toks.size(); ++i)
      grams.insert(join(toks, i, n));
  }
  DecontamResult r;
  for (std::size_t t = 0; t < train.size(); ++t) {
    auto toks = normalize_tokens(train[t]);
    bool hit = false;
    for (std::size_t i = 0; i + n <= toks.size() && !hit; ++i) {
      std::string g = join(toks, i, n);
      if (grams.count(g)) {
        r.dropped.push_back({t, g});
        hit = true;
      }
    }
    if (!hit)
      r.kept.push_back(t);
  }
  return r;
}

E2eCounts count_e2e(const std::vector<std::string> &responses, const rtl::DesignUnit &d,
                    const verify::Bound &bound) {
  E2eCounts c;
  for (const auto &resp : responses) {
    for (const auto &cand : sva::extract_assertions(resp)) {
      ++c.sva;
      if (!cand.parsed)
        continue;
      ++c.sync;
      try {
        auto rep = verify::holds_on_design(*cand.parsed, d, bound);
        if (rep.outcome == verify::Outcome::Holds) {
          ++c.proven;
          if (rep.tautology)
            ++c.tautology;
        }
      } catch (const Error &) {
        // Unknown signals or an exceeded bound: not proven.
      }
    }
  }
  return c;
}

} // namespace svaforge::metrics
