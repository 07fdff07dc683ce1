#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sullivan/classify.hpp"
#include "sullivan/cohomology.hpp"
#include "sullivan/model.hpp"

namespace sullivan {

enum class CheckId { P1, P2Endpoint, P3, P4, P5, P6, P7 };

const char* to_string(CheckId id);

/// Whether a check's hypotheses hold. Informative checks evaluate their
/// claims although some premise (an asserted flag, l >= 3, ellipticity of
/// both factors) is missing; their failures are not findings.
enum class Applicability { Applicable, Informative, NotApplicable, Unknown };

const char* to_string(Applicability a);

enum class Relation { GreaterEqual, Equal };

struct BoundClaim {
    std::string description;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
    Relation relation = Relation::GreaterEqual;
    bool satisfied = false;
};

struct PropositionCheck {
    CheckId id = CheckId::P1;
    Applicability applicability = Applicability::NotApplicable;
    std::string premise_note;
    std::vector<BoundClaim> claims;
    std::vector<std::pair<std::string, std::int64_t>> values; // reported quantities
    std::vector<std::string> notes;

    bool premises_met() const { return applicability == Applicability::Applicable; }
    bool all_satisfied() const;
};

struct Finding {
    std::string check; // "H" for the main inequality, else a CheckId name
    std::string claim;
    std::string model_text;
};

struct ConjectureReport {
    int dim_v = 0;
    std::int64_t dim_h = 0;
    std::int64_t margin = 0;
    bool holds = false;
    EllipticityVerdict ellipticity;
    /// NOT_ELLIPTIC: the conjecture's hypothesis fails; numbers are reported anyway.
    bool out_of_hypothesis = false;
    std::vector<PropositionCheck> checks;
    std::vector<Finding> findings;
    /// Present when the differential has homogeneous length.
    std::optional<BigradedBettiTable> bigraded;
};

/// Largest exponent accepted by pow2.
inline constexpr int kMaxExponent = 62;

/// 2^e for 0 <= e <= 62; throws std::overflow_error otherwise.
std::int64_t pow2(int e);

/// Main inequality plus every applicable proposition check. A failed claim
/// of an applicable check (or of the main inequality) on a presumed-elliptic
/// model is recorded as a Finding carrying the serialized model.
ConjectureReport check_hilali(const SullivanModel& model, const BettiTable& table,
                              const CohomologyOptions& options = {});

/// Same, reusing an existing classification (the bigraded table is computed
/// here when the model has a homogeneous length).
ConjectureReport check_hilali(const SullivanModel& model, const BettiTable& table,
                              const ClassificationReport& classes, const CohomologyOptions& options = {});

PropositionCheck check_prop1(const SullivanModel& model, const BettiTable& table, const ClassificationReport& classes);
PropositionCheck check_prop2_endpoint(const SullivanModel& model, const BettiTable& table, const ClassificationReport& classes);
PropositionCheck check_prop3(const SullivanModel& model, const BettiTable& table, const BigradedBettiTable* bigraded);
PropositionCheck check_prop4(const SullivanModel& model, const BettiTable& table, const ClassificationReport& classes,
                             const BigradedBettiTable* bigraded);
PropositionCheck check_prop6(const SullivanModel& model, const BettiTable& table, const ClassificationReport& classes);
PropositionCheck check_prop7(const SullivanModel& model, const BettiTable& table, const ClassificationReport& classes);

/// Product check on the tensor of two models; each model's table is computed
/// over its default window.
PropositionCheck check_prop5(const SullivanModel& a, const SullivanModel& b, const CohomologyOptions& options = {});

} // namespace sullivan
