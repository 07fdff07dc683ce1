#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sullivan/model.hpp"

namespace sullivan {

inline constexpr std::size_t kDefaultBasisCap = 200000;

struct CohomologyOptions {
    /// Highest degree to compute; defaults to default_window(model).
    std::optional<int> max_degree;
    /// Abort with BasisTooLarge if any degree has more monomials than this.
    std::size_t basis_cap = kDefaultBasisCap;
    /// Worker threads for independent degrees / blocks.
    unsigned jobs = 1;
};

class BasisTooLarge : public std::runtime_error {
public:
    BasisTooLarge(int degree, std::size_t cap);
    int degree() const { return degree_; }
    std::size_t cap() const { return cap_; }

private:
    int degree_;
    std::size_t cap_;
};

class NotHomogeneous : public std::runtime_error {
public:
    NotHomogeneous() : std::runtime_error("NOT_HOMOGENEOUS: the differential has no homogeneous wordlength") {}
};

/// Column-sparse exact matrix. columns[j] lists (row, value) with rows ascending.
struct SparseMatrix {
    std::size_t rows = 0;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> columns;

    std::size_t cols() const { return columns.size(); }
    Rational at(std::size_t row, std::size_t col) const;
};

/// Rank over the rationals via fraction-free elimination on integer rows.
std::size_t rank(const SparseMatrix& m);

/// The matrix of d from span(source) to span(target): column j holds the
/// coefficients of apply_d(source[j]) on the target monomials.
SparseMatrix differential_matrix(const SullivanModel& model, const std::vector<Monomial>& source,
                                 const std::vector<Monomial>& target);

struct BoundaryMatrices {
    SparseMatrix incoming; // degree k-1 -> k
    SparseMatrix outgoing; // degree k -> k+1
};

BoundaryMatrices boundary_matrices(const SullivanModel& model, int k);

/// Sum of odd generator degrees minus sum of (even degree - 1). The formal
/// dimension of an elliptic model; negative means not elliptic.
int fd_bound(const SullivanModel& model);

/// max(fd_bound, 0) + largest generator degree.
int default_window(const SullivanModel& model);

int betti(const SullivanModel& model, int k);

struct BettiTable {
    std::vector<std::int64_t> betti; // b_0 .. b_N
    int max_degree_computed = 0;
    std::int64_t total = 0;
    int observed_fd = 0;

    std::int64_t at(int k) const;
};

BettiTable cohomology_table(const SullivanModel& model, const CohomologyOptions& options = {});

/// One (degree, wordlength) block of the split complex.
struct BigradedBlock {
    std::size_t basis_size = 0;
    std::size_t rank_in = 0;
    std::size_t rank_out = 0;
    std::int64_t dim = 0;
};

struct BigradedBettiTable {
    int length = 2; // homogeneous length l; d shifts wordlength by l - 1
    int max_degree_computed = 0;
    std::map<std::pair<int, int>, BigradedBlock> blocks; // (degree, wordlength)
    std::map<int, std::int64_t> per_wordlength_totals;   // only nonzero totals

    std::int64_t dim(int degree, int wordlength) const;
    std::int64_t total(int wordlength) const;
};

/// Cohomology split by wordlength. Throws NotHomogeneous unless the model has
/// a homogeneous-length differential. The per-degree sums are checked against
/// `reference` (computed here when omitted); a mismatch is a logic_error.
BigradedBettiTable wordlength_cohomology(const SullivanModel& model, const CohomologyOptions& options,
                                         const BettiTable& reference);
BigradedBettiTable wordlength_cohomology(const SullivanModel& model, const CohomologyOptions& options = {});

struct EllipticityVerdict {
    enum class Kind { NotElliptic, PresumedElliptic };

    Kind kind = Kind::PresumedElliptic;
    std::string reason;
    std::optional<int> witness_degree; // some k > fd_bound with b_k > 0
    int verified_up_to = 0;
    int fd_bound = 0;

    bool elliptic() const { return kind == Kind::PresumedElliptic; }
};

const char* to_string(EllipticityVerdict::Kind kind);

/// NOT_ELLIPTIC on a negative fd bound, on more even than odd generators, or
/// on cohomology above the fd bound. PRESUMED_ELLIPTIC only means nothing was
/// found up to the computed degree.
EllipticityVerdict ellipticity_verdict(const SullivanModel& model, const BettiTable& table);

} // namespace sullivan
