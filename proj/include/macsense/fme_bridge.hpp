#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "macsense/info_terms.hpp"
#include "macsense/linear_system.hpp"

namespace macsense {

// Information terms rounded to multiples of 2^-denom_bits. Both systems under
// comparison are built from the same rationalized values, so the equivalence
// check is exact at the rationalized instance. Rounding can flip a dominance
// identity (I1 >= I5 etc.) by one ulp; `from` repairs that by clamping the
// dominated term, which moves it by at most one ulp.
struct RationalInfoTerms {
    std::array<Rat, 16> v;

    static RationalInfoTerms from(const InfoTerms& info, unsigned denom_bits = 40);
};

// The pre-elimination auxiliary-rate system over
// (R1, R2, R1p, R2p, R1v, R2v): covering lower bounds on the compression
// rates, the cross-transmitter and receiver decoding bounds, and
// nonnegativity of all six rates plus the common parts R_k - R_kp.
RationalLinearSystem build_subrates_system(const RationalInfoTerms& info);

// The post-elimination region on (R1, R2): thirteen rate bounds (three
// min-expressions expanded plus the unconditioned sum bound), nonnegativity,
// and the five feasibility conditions as zero-coefficient rows.
RationalLinearSystem theorem_region_system(const RationalInfoTerms& info);

struct FmeVerification {
    EquivalenceReport report;
    std::size_t projected_rows = 0;
    Rat box_hi;
};

// Projects the auxiliary-rate system onto (R1, R2) and compares membership
// with the direct region transcription on a grid plus random rational points.
// `perturb_rhs` is a test hook that offsets the first projected right-hand
// side to exercise the counterexample path.
FmeVerification verify_fme_instance(const InfoTerms& info, std::size_t grid_per_axis,
                                    std::size_t random_samples, std::uint64_t seed,
                                    std::optional<Rat> perturb_rhs = std::nullopt);

}  // namespace macsense
