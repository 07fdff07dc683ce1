#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sullivan/model.hpp"

namespace sullivan::constructors {

class GenerationFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The model of a point: no generators.
ModelSpec empty(std::string name = "point");

/// Odd n: Λ(x_n), d = 0. Even n: Λ(x_n, y_{2n-1}), dy = x^2.
ModelSpec sphere(int n);

/// CP^n: Λ(x_2, y_{2n+1}), dy = x^{n+1}.
ModelSpec projective(int n);

/// n degree-1 generators with zero differential, flagged nilpotent.
ModelSpec torus(int n);

/// Λ(x_1, y_1, z_1), dz = x y, flagged nilpotent.
ModelSpec heisenberg();

/// Two-stage model with odd U of the given degrees and one W generator per
/// pair i < j with dw = u_i u_j, so that d : W -> Λ²U is an isomorphism.
ModelSpec two_stage(const std::vector<int>& u_degrees);

/// Model of a product: disjoint union of generators (prefixed "a_" and "b_"),
/// differentials carried over.
ModelSpec tensor(const ModelSpec& a, const ModelSpec& b);

struct RandomCaps {
    int max_generators = 6;
    int max_degree = 9;
};

inline constexpr int kRetryBudget = 1000;

/// Odd U with d = 0 and W generators whose differentials are random nonzero
/// elements of Λ²U. With `square_iso`, W has one generator per pair of U and
/// d : W -> Λ²U is invertible.
ModelSpec random_two_stage(std::uint64_t seed, RandomCaps caps = {}, bool square_iso = false);

/// Even generators with d = 0 and odd generators with differentials in the
/// polynomial algebra on the even ones.
ModelSpec random_pure(std::uint64_t seed, RandomCaps caps = {});

enum class Family { Sphere, Projective, Torus, Heisenberg, TwoStage, PureRandom, TwoStageRandom };

struct FamilyParams {
    Family family = Family::Sphere;
    int n = 2;
    std::vector<int> degrees; // TwoStage: U degrees
    std::uint64_t seed = 0;
    RandomCaps caps;
    bool square_iso = false;
};

std::optional<Family> parse_family(const std::string& name);
const char* to_string(Family family);

ModelSpec build(const FamilyParams& params);

} // namespace sullivan::constructors
