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

// Dense vectors over the unit box and the gradients living alongside them.

#ifndef DRSUB_VECTOR_H_
#define DRSUB_VECTOR_H_

#include <cstddef>
#include <span>
#include <vector>

namespace drsub {

// A point of [0,1]^n. Raw input is clamped coordinate-wise into the box, so
// evaluating an objective at Point(v) is evaluating it at v ∧ 1 (and 0 ∨ v).
// NaN coordinates are rejected with NonFiniteValue.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> raw);

  static Point Zeros(std::size_t n);
  static Point Ones(std::size_t n);
  static Point Filled(std::size_t n, double value);
  // 1_S for S given as a list of coordinates.
  static Point Indicator(std::size_t n, std::span<const std::size_t> support);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

  // Clamped assignment of a single coordinate.
  void Set(std::size_t i, double value);

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> values_;
};

// A gradient (or masked gradient). Every entry is finite; construction from a
// vector holding NaN or Inf throws NonFiniteValue.
class Gradient {
 public:
  Gradient() = default;
  explicit Gradient(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

  friend bool operator==(const Gradient&, const Gradient&) = default;

 private:
  std::vector<double> values_;
};

// Coordinate-wise max / min / product. Lengths must agree (DimensionError).
Point Join(const Point& a, const Point& b);
Point Meet(const Point& a, const Point& b);
Point Hadamard(const Point& a, const Point& b);
Gradient Hadamard(const Gradient& a, const Gradient& b);
Gradient Hadamard(const Point& mask, const Gradient& g);

// 1 - x.
Point Complement(const Point& x);

// (1 - z) ∘ grad.
Gradient MaskedGradient(const Point& z, const Gradient& grad);

struct Norms {
  double l1 = 0.0;
  double linf = 0.0;
};

Norms ComputeNorms(std::span<const double> values);
inline Norms ComputeNorms(const Point& p) { return ComputeNorms(p.values()); }

double L1Norm(const Point& p);

// True iff a[i] <= b[i] + tol for every i.
bool DominatedBy(const Point& a, const Point& b, double tol = 0.0);

}  // namespace drsub

#endif  // DRSUB_VECTOR_H_
