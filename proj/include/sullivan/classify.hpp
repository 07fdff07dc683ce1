#pragma once

#include <optional>
#include <vector>

#include "sullivan/model.hpp"

namespace sullivan {

/// Generator-wise split V = U + W with U the generators of zero differential.
struct TwoStageData {
    std::vector<GeneratorId> u;
    std::vector<GeneratorId> w;
    bool dw_in_lambda_u = false;
    /// d restricted to span(W) is a bijection onto the wordlength-2 part of ΛU.
    bool square_iso = false;
    int dim_u = 0;
    int dim_w = 0;
    int dim_lambda2_u = 0;
};

struct ClassificationReport {
    bool pure = false;
    bool coformal = false;
    bool hyperelliptic = false;
    std::optional<TwoStageData> two_stage;
    std::optional<int> homogeneous_length;
    /// Flagged nilpotent, all degrees 1, and the generators can be ordered so
    /// that each differential only involves earlier ones.
    bool nilmanifold_type = false;
    bool simply_connected = true;

    int dim_v = 0;
    int dim_v_even = 0;
    int dim_v_odd = 0;
    int p = 0; // dim V^odd - dim V^even, may be negative
};

/// Two-stage data when every differential of a non-closed generator lies in
/// the subalgebra generated by the closed ones; nullopt otherwise.
std::optional<TwoStageData> two_stage_decompose(const SullivanModel& model);

ClassificationReport classify(const SullivanModel& model);

} // namespace sullivan
