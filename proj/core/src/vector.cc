// Copyright 2026 The drsub Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "drsub/vector.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "drsub/errors.h"

namespace drsub {
namespace {

double ClampUnit(double v) {
  if (std::isnan(v)) throw NonFiniteValue("NaN coordinate in point");
  return std::clamp(v, 0.0, 1.0);
}

void CheckSameSize(std::size_t a, std::size_t b) {
  if (a != b) throw DimensionError(a, b);
}

template <typename Op>
std::vector<double> Zip(std::span<const double> a, std::span<const double> b,
                        Op op) {
  CheckSameSize(a.size(), b.size());
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a[i], b[i]);
  return out;
}

}  // namespace

Point::Point(std::vector<double> raw) : values_(std::move(raw)) {
  for (double& v : values_) v = ClampUnit(v);
}

Point Point::Zeros(std::size_t n) { return Filled(n, 0.0); }
Point Point::Ones(std::size_t n) { return Filled(n, 1.0); }
Point Point::Filled(std::size_t n, double value) {
  return Point(std::vector<double>(n, value));
}

Point Point::Indicator(std::size_t n, std::span<const std::size_t> support) {
  std::vector<double> v(n, 0.0);
  for (std::size_t i : support) {
    if (i >= n) throw DimensionError(n, i + 1);
    v[i] = 1.0;
  }
  return Point(std::move(v));
}

void Point::Set(std::size_t i, double value) { values_.at(i) = ClampUnit(value); }

Gradient::Gradient(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw NonFiniteValue("non-finite gradient entry at coordinate " +
                           std::to_string(i));
    }
  }
}

Point Join(const Point& a, const Point& b) {
  return Point(Zip(a.values(), b.values(),
                   [](double x, double y) { return std::max(x, y); }));
}

Point Meet(const Point& a, const Point& b) {
  return Point(Zip(a.values(), b.values(),
                   [](double x, double y) { return std::min(x, y); }));
}

Point Hadamard(const Point& a, const Point& b) {
  return Point(Zip(a.values(), b.values(), std::multiplies<>()));
}

Gradient Hadamard(const Gradient& a, const Gradient& b) {
  return Gradient(Zip(a.values(), b.values(), std::multiplies<>()));
}

Gradient Hadamard(const Point& mask, const Gradient& g) {
  return Gradient(Zip(mask.values(), g.values(), std::multiplies<>()));
}

Point Complement(const Point& x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = 1.0 - x[i];
  return Point(std::move(out));
}

Gradient MaskedGradient(const Point& z, const Gradient& grad) {
  CheckSameSize(z.size(), grad.size());
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = (1.0 - z[i]) * grad[i];
  return Gradient(std::move(out));
}

Norms ComputeNorms(std::span<const double> values) {
  Norms n;
  for (double v : values) {
    n.l1 += std::abs(v);
    n.linf = std::max(n.linf, std::abs(v));
  }
  return n;
}

double L1Norm(const Point& p) { return ComputeNorms(p).l1; }

bool DominatedBy(const Point& a, const Point& b, double tol) {
  CheckSameSize(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i] + tol) return false;
  }
  return true;
}

}  // namespace drsub
