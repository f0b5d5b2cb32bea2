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

// Seeded benchmark families:
//
//   NQP  f(x) = 1/2 x'Hx + h'x, H_ij ~ U[-10, 0], h = -0.2 H'1.
//   DPP  f(x) = log det(diag(x)(L - I) + I), L = V diag(exp(r)) V',
//        r_i ~ U[-0.5, 1], V Haar-orthogonal.
//   CUT  multilinear extension of a weighted directed cut function on at most
//        16 nodes, evaluated by exact enumeration.
//
// Generation is a pure function of (family, n, seed). Draw order: NQP fills H
// row-major; DPP draws all r_i first, then the n*n Gaussian matrix row-major;
// CUT fills off-diagonal weights row-major.

#ifndef DRSUB_INSTANCES_H_
#define DRSUB_INSTANCES_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "drsub/oracle.h"
#include "drsub/vector.h"

namespace drsub {

enum class Family { kNqp, kDpp, kCut };

std::string_view FamilyName(Family family);
// Case-insensitive "nqp" / "dpp" / "cut"; ValidationError otherwise.
Family ParseFamily(std::string_view name);

struct InstanceSpec {
  Family family = Family::kNqp;
  std::size_t n = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;
};

inline constexpr std::size_t kMaxCutNodes = 16;

// ---------------------------------------------------------------------------
// NQP

struct NqpInstance {
  Eigen::MatrixXd H;
  Eigen::VectorXd h;
};

NqpInstance GenerateNqp(std::size_t n, std::uint64_t seed);
// Builds an instance from an explicit H (entries must lie in [-10, 0]).
NqpInstance NqpFromMatrix(Eigen::MatrixXd H);

double NqpValue(const NqpInstance& inst, const Point& x);
Gradient NqpGrad(const NqpInstance& inst, const Point& x);

// ---------------------------------------------------------------------------
// DPP

struct DppInstance {
  Eigen::MatrixXd L;
  Eigen::VectorXd eigenvalues;
};

DppInstance GenerateDpp(std::size_t n, std::uint64_t seed);

// log det M(x), M(x) = diag(x)(L - I) + I, through partial-pivot LU.
// SingularMatrix if det M(x) <= 0 or |det M(x)| < 1e-300.
double DppValue(const DppInstance& inst, const Point& x);
// grad_i = ((L - I) M(x)^-1)_ii.
Gradient DppGrad(const DppInstance& inst, const Point& x);

// ---------------------------------------------------------------------------
// CUT

struct CutInstance {
  std::size_t n = 0;
  // Directed edge weights, zero diagonal.
  Eigen::MatrixXd weights;
  // F(S) for every subset S encoded as a bitmask.
  std::vector<double> set_values;
};

CutInstance GenerateCut(std::size_t n, std::uint64_t seed);
CutInstance CutFromWeights(Eigen::MatrixXd weights);

// F(S) = sum of w(i -> j) over i in S, j not in S.
double CutSetValue(const CutInstance& inst, std::uint32_t mask);

double MultilinearValue(const CutInstance& inst, const Point& x);
// grad_i = f(x with x_i = 1) - f(x with x_i = 0).
Gradient MultilinearGrad(const CutInstance& inst, const Point& x);

// ---------------------------------------------------------------------------
// Uniform access

struct Instance {
  InstanceSpec spec;
  std::variant<NqpInstance, DppInstance, CutInstance> data;
};

Instance GenerateInstance(const InstanceSpec& spec);

std::shared_ptr<const Objective> MakeObjective(const NqpInstance& inst);
std::shared_ptr<const Objective> MakeObjective(const DppInstance& inst);
std::shared_ptr<const Objective> MakeObjective(const CutInstance& inst);
std::shared_ptr<const Objective> MakeObjective(const Instance& inst);

// JSON document: {"family", "n", "seed", "matrix": [row-major decimal
// strings]}; DPP documents also carry "eigenvalues". Decimal strings are
// shortest round-trip, so a load reproduces the instance bit for bit.
std::string InstanceToJson(const Instance& inst);
// Re-validates every family invariant; ValidationError on failure.
Instance InstanceFromJson(std::string_view text);

}  // namespace drsub

#endif  // DRSUB_INSTANCES_H_
