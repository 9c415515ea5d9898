// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "svaforge/llm/gateway.hpp"
#include "svaforge/rtl/design.hpp"
#include "svaforge/verify/verify.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace svaforge::metrics {

using Rational = boost::multiprecision::cpp_rational;

//===----------------------------------------------------------------------===//
// Func.@k
//===----------------------------------------------------------------------===//

struct SampleDetail {
  bool syntax_ok = false;
  std::string verdict; // outcome name, "syntax", or "error: ..."
};

struct EvalResult {
  std::string problem_id;
  uint32_t n = 0;
  uint32_t c = 0; // samples equivalent to the ground truth
  std::vector<SampleDetail> samples;
};

/// 1 - C(n-c, k) / C(n, k), exactly.
Rational func_at_k_exact(uint32_t n, uint32_t c, uint32_t k);
/// Mean over problems, exactly. Throws InvalidArgument when k is 0 or
/// exceeds some n, or when `results` is empty.
Rational func_at_k_exact(const std::vector<EvalResult> &results, uint32_t k);
double func_at_k(const std::vector<EvalResult> &results, uint32_t k);

struct Problem {
  std::string id;
  rtl::DesignUnit design;
  std::string nl;
  sva::Assertion ground_truth;
};

/// Draws `n` samples per problem and counts those equivalent to the ground
/// truth under the design. Backend failures count as incorrect.
std::vector<EvalResult> evaluate(const std::vector<Problem> &problems, llm::Gateway &gw, uint32_t n,
                                 const verify::Bound &bound);

//===----------------------------------------------------------------------===//
// Diversity
//===----------------------------------------------------------------------===//

struct DiversityOptions {
  uint32_t n_gram = 3;
  /// Above this many unordered pairs, a seeded uniform sample of this size is used.
  uint64_t pair_cap = 20000;
  uint64_t seed = 0;
};

/// Mean pairwise (1 - cosine) between token n-gram TF-IDF vectors.
/// TF is the raw count and IDF is ln(N / df) + 1.
double tfidf_diversity(const std::vector<std::string> &corpus, const DiversityOptions &opts = {});

struct CurvePoint {
  std::size_t size;
  double diversity;
};

/// Diversity of seeded uniform subsets of each size (sizes above the corpus
/// size are skipped).
std::vector<CurvePoint> diversity_curve(const std::vector<std::string> &corpus, const std::vector<std::size_t> &sizes,
                                        const DiversityOptions &opts = {});
std::string curve_csv(const std::vector<CurvePoint> &curve, uint64_t seed);

//===----------------------------------------------------------------------===//
// Decontamination
//===----------------------------------------------------------------------===//

/// Lowercased alphanumeric runs.
std::vector<std::string> normalize_tokens(const std::string &text);

struct Contamination {
  std::size_t index; // into the training list
  std::string ngram; // one offending n-gram, space separated
};

struct DecontamResult {
  std::vector<std::size_t> kept;
  std::vector<Contamination> dropped;
};

DecontamResult decontaminate(const std::vector<std::string> &train, const std::vector<std::string> &bench,
                             uint32_t n = 13);

//===----------------------------------------------------------------------===//
// End-to-end counts
//===----------------------------------------------------------------------===//

struct E2eCounts {
  uint64_t sva = 0;
  uint64_t sync = 0;
  uint64_t proven = 0;
  uint64_t tautology = 0; // proven candidates that are also tautologies
};

E2eCounts count_e2e(const std::vector<std::string> &responses, const rtl::DesignUnit &d,
                    const verify::Bound &bound);

} // namespace svaforge::metrics
