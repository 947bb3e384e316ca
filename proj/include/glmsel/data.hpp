#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "glmsel/errors.hpp"
#include "glmsel/family.hpp"
#include "glmsel/types.hpp"

namespace glmsel {

// A response vector with its full n x p design matrix.
struct Dataset {
  Vec response;
  Mat design;
  std::vector<std::string> column_names;  // optional; empty or size p

  Index n() const { return design.rows(); }
  Index p() const { return design.cols(); }
};

// Strictly increasing column indices into the full design.
struct ModelSupport {
  std::vector<Index> indices;

  ModelSupport() = default;
  explicit ModelSupport(std::vector<Index> idx) : indices(std::move(idx)) {
    if (!std::is_sorted(indices.begin(), indices.end()) ||
        std::adjacent_find(indices.begin(), indices.end()) != indices.end())
      throw DataError("model support indices must be strictly increasing");
    if (!indices.empty() && indices.front() < 0)
      throw DataError("model support indices must be nonnegative");
  }

  Index size() const { return static_cast<Index>(indices.size()); }
  bool empty() const { return indices.empty(); }
  bool contains(Index j) const {
    return std::binary_search(indices.begin(), indices.end(), j);
  }
  bool operator==(const ModelSupport& other) const = default;
};

inline void validate_dataset(const Dataset& data, Family family) {
  if (data.design.rows() < 1 || data.design.cols() < 1)
    throw DataError("dataset must have n >= 1 and p >= 1");
  if (data.response.size() != data.design.rows())
    throw DataError("response length does not match design rows");
  if (!data.response.allFinite() || !data.design.allFinite())
    throw DataError("dataset contains non-finite entries");
  if (family == Family::bernoulli_logit) {
    for (Index i = 0; i < data.response.size(); ++i) {
      const double y = data.response[i];
      if (y != 0.0 && y != 1.0)
        throw DataError("bernoulli_logit responses must be 0 or 1");
    }
  }
}

inline void validate_support(const ModelSupport& support, Index p, Index n) {
  if (support.empty()) throw DataError("model support is empty");
  if (support.indices.back() >= p)
    throw DataError("model support index out of range");
  if (support.size() > n)
    throw DataError("model support larger than sample size");
}

inline Mat gather_columns(const MatRef& design, const ModelSupport& support) {
  Mat sub(design.rows(), support.size());
  for (Index k = 0; k < support.size(); ++k) sub.col(k) = design.col(support.indices[k]);
  return sub;
}

}  // namespace glmsel
