#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sullivan/algebra.hpp"

namespace sullivan {

/// User-asserted metadata; nothing is computed from these.
struct ModelFlags {
    bool formal = false;
    bool nilpotent = false;

    friend bool operator==(const ModelFlags&, const ModelFlags&) = default;
};

/// An unvalidated model: generators plus the differential on each generator.
/// `differential[id]` is the image of generator `id` (zero if unset).
struct ModelSpec {
    std::string name;
    GeneratorSet generators;
    std::vector<Polynomial> differential;
    ModelFlags flags;

    GeneratorId add_generator(std::string gen_name, int degree);
    void set_differential(GeneratorId id, Polynomial image);
    const Polynomial& d(GeneratorId id) const;

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

enum class ViolationCode {
    BadDegree,
    UnknownGenerator,
    DegreeMismatch,
    NotMinimal,
    DSquaredNonzero,
    NotSimplyConnected,
};

const char* to_string(ViolationCode code);

struct Violation {
    ViolationCode code;
    GeneratorId generator = -1;
    std::string message;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const { return violations_; }
    bool has(ViolationCode code) const;

private:
    std::vector<Violation> violations_;
};

/// A model that passed validate(): degree +1, minimal, d^2 = 0, and
/// simply connected unless flagged nilpotent.
class SullivanModel {
public:
    const ModelSpec& spec() const { return spec_; }
    const std::string& name() const { return spec_.name; }
    const GeneratorSet& generators() const { return spec_.generators; }
    const Polynomial& d(GeneratorId id) const { return spec_.d(id); }
    const ModelFlags& flags() const { return spec_.flags; }

    int dim_v() const { return static_cast<int>(spec_.generators.size()); }
    int dim_v_even() const { return dim_even_; }
    int dim_v_odd() const { return dim_v() - dim_even_; }
    bool simply_connected() const { return simply_connected_; }

private:
    friend SullivanModel validate(ModelSpec spec);
    explicit SullivanModel(ModelSpec spec);

    ModelSpec spec_;
    int dim_even_ = 0;
    bool simply_connected_ = true;
};

/// Every violation found in `spec`, in generator order. Empty means valid.
std::vector<Violation> find_violations(const ModelSpec& spec);

/// Throws ValidationError carrying every violation.
SullivanModel validate(ModelSpec spec);

/// Extends the differential to all of the algebra by the graded Leibniz rule.
Polynomial apply_d(const ModelSpec& spec, const Polynomial& p);
inline Polynomial apply_d(const SullivanModel& model, const Polynomial& p) { return apply_d(model.spec(), p); }

Polynomial apply_d(const ModelSpec& spec, const Monomial& m);

/// l >= 2 such that every nonzero differential lies in wordlength l. Zero
/// differentials are compatible with any l; an all-zero differential gives 2.
std::optional<int> homogeneous_length(const SullivanModel& model);

} // namespace sullivan
