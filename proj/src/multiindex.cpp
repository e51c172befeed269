#include "hbi/multiindex.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

namespace hbi {

MultiIndex::MultiIndex(std::vector<int> components)
    : components_(std::move(components)) {
  if (components_.empty())
    throw error(errc::invalid_input, "multi-index needs at least one component");
  for (int b : components_) {
    if (b < 0)
      throw error(errc::invalid_input,
                  "multi-index components must be nonnegative");
    order_ += b;
  }
}

MultiIndex MultiIndex::zero(int dim) {
  return MultiIndex(std::vector<int>(dim, 0));
}

MultiIndex MultiIndex::parse(const std::string& text, int expected_dim) {
  std::vector<int> comps;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::size_t pos = 0;
    int value = 0;
    try {
      value = std::stoi(token, &pos);
    } catch (const std::exception&) {
      throw error(errc::parse, "bad multi-index component '" + token + "'");
    }
    while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos])))
      ++pos;
    if (pos != token.size() || value < 0)
      throw error(errc::parse, "bad multi-index component '" + token + "'");
    comps.push_back(value);
  }
  if (comps.empty())
    throw error(errc::parse, "empty multi-index '" + text + "'");
  if (expected_dim >= 0 && static_cast<int>(comps.size()) != expected_dim) {
    std::ostringstream out;
    out << "multi-index '" << text << "' has " << comps.size()
        << " components, expected " << expected_dim;
    throw error(errc::parse, out.str());
  }
  return MultiIndex(std::move(comps));
}

std::string MultiIndex::str() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) out << ",";
    out << components_[i];
  }
  return out.str();
}

MultiIndexSet::MultiIndexSet(std::vector<MultiIndex> indices)
    : indices_(std::move(indices)) {
  if (indices_.empty())
    throw error(errc::invalid_input, "multi-index set may not be empty");
  const int d = indices_.front().dim();
  for (const MultiIndex& b : indices_)
    if (b.dim() != d)
      throw error(errc::invalid_input,
                  "multi-index set mixes different dimensions");
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
    throw error(errc::invalid_input, "multi-index set contains duplicates");
  if (!indices_.front().is_zero())
    throw error(errc::invalid_input,
                "multi-index set must contain the zero index");
}

MultiIndexSet MultiIndexSet::lagrange(int dim) {
  return MultiIndexSet({MultiIndex::zero(dim)});
}

namespace {

void enumerate_complete(int dim, int order, std::vector<int>& current,
                        std::vector<MultiIndex>& out) {
  if (static_cast<int>(current.size()) == dim) {
    out.push_back(MultiIndex(current));
    return;
  }
  int used = std::accumulate(current.begin(), current.end(), 0);
  for (int b = 0; b + used <= order; ++b) {
    current.push_back(b);
    enumerate_complete(dim, order, current, out);
    current.pop_back();
  }
}

}  // namespace

MultiIndexSet MultiIndexSet::complete(int dim, int order) {
  if (dim < 1 || order < 0)
    throw error(errc::invalid_input, "complete set needs dim >= 1, order >= 0");
  std::vector<MultiIndex> out;
  std::vector<int> current;
  enumerate_complete(dim, order, current, out);
  return MultiIndexSet(std::move(out));
}

int MultiIndexSet::dim() const { return indices_.front().dim(); }

bool MultiIndexSet::contains(const MultiIndex& beta) const {
  return std::binary_search(indices_.begin(), indices_.end(), beta);
}

int global_order_k(std::span<const MultiIndexSet> sets) {
  if (sets.empty())
    throw error(errc::invalid_input,
                "global_order_k needs at least one multi-index set");
  int k = 0;
  for (const MultiIndexSet& s : sets)
    for (const MultiIndex& b : s) k = std::max(k, b.order());
  return k;
}

int completeness_order(const MultiIndexSet& set) {
  int q = 0;
  while (true) {
    // Every index of total order q+1 must be present to advance.
    std::vector<int> current;
    std::vector<MultiIndex> layer;
    enumerate_complete(set.dim(), q + 1, current, layer);
    bool all = true;
    for (const MultiIndex& b : layer) {
      if (b.order() == q + 1 && !set.contains(b)) {
        all = false;
        break;
      }
    }
    if (!all) return q;
    ++q;
  }
}

namespace {

// 22! overflows the 2^53 integer range of a double; beyond that fall back
// to running multiplication (orders that large never appear in practice).
constexpr int kFactorialTableSize = 23;

const double* factorial_table() {
  static const auto table = [] {
    std::array<double, kFactorialTableSize> t{};
    t[0] = 1.0;
    for (int i = 1; i < kFactorialTableSize; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table.data();
}

}  // namespace

double factorial_product(const MultiIndex& beta) {
  double result = 1.0;
  for (int b : beta.components()) {
    if (b < kFactorialTableSize) {
      result *= factorial_table()[b];
    } else {
      for (int i = 2; i <= b; ++i) result *= i;
    }
  }
  return result;
}

namespace {

double int_pow(double base, int exp) {
  double result = 1.0;
  double acc = base;
  while (exp > 0) {
    if (exp & 1) result *= acc;
    acc *= acc;
    exp >>= 1;
  }
  return result;
}

}  // namespace

double monomial(std::span<const double> dv, const MultiIndex& beta) {
  if (static_cast<int>(dv.size()) != beta.dim())
    throw error(errc::invalid_input, "monomial dimension mismatch");
  double result = 1.0;
  for (int j = 0; j < beta.dim(); ++j) {
    int b = beta.components()[j];
    if (b > 0) result *= int_pow(dv[j], b);
  }
  return result;
}

double taylor_eval(const Vec& v, const Vec& v_center,
                   const MultiIndexSet& deltas,
                   const std::map<MultiIndex, double>& data) {
  if (v.size() != v_center.size() ||
      static_cast<int>(v.size()) != deltas.dim())
    throw error(errc::invalid_input, "taylor_eval dimension mismatch");
  if (data.size() != deltas.size())
    throw error(errc::inconsistent_data,
                "derivative data keys do not match the multi-index set");
  Vec dv(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) dv[j] = v[j] - v_center[j];
  double sum = 0.0;
  for (const auto& [beta, value] : data) {
    if (!deltas.contains(beta))
      throw error(errc::inconsistent_data,
                  "derivative data key " + beta.str() +
                      " is not in the multi-index set");
    sum += value * monomial(dv, beta) / factorial_product(beta);
  }
  return sum;
}

}  // namespace hbi
