#include "macsense/linear_system.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "macsense/errors.hpp"
#include "macsense/rng.hpp"

namespace macsense {

Rat rationalize(double x, unsigned denom_bits) {
    Rat exact(x);  // binary doubles convert exactly
    mpz_class den = 1;
    den <<= denom_bits;
    Rat scaled = exact * Rat(den);
    // round half up: floor(scaled + 1/2)
    Rat half(1, 2);
    scaled += half;
    mpz_class num;
    mpz_fdiv_q(num.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    Rat out{num, den};
    out.canonicalize();
    return out;
}

RationalLinearSystem::RationalLinearSystem(std::vector<std::string> variables)
    : vars_(std::move(variables)), nonneg_(vars_.size(), false) {}

void RationalLinearSystem::add(std::vector<Rat> coeff, const std::string& rel, Rat rhs) {
    if (coeff.size() != vars_.size())
        throw ShapeError("inequality has " + std::to_string(coeff.size()) +
                         " coefficients, expected " + std::to_string(vars_.size()));
    RationalInequality row;
    if (rel == "<=" || rel == "<") {
        row.coeff = std::move(coeff);
        row.rhs = std::move(rhs);
        row.rel = rel == "<" ? Rel::LT : Rel::LE;
    } else if (rel == ">=" || rel == ">") {
        row.coeff.reserve(coeff.size());
        for (auto& c : coeff) row.coeff.push_back(-c);
        row.rhs = -rhs;
        row.rel = rel == ">" ? Rel::LT : Rel::LE;
    } else {
        throw std::invalid_argument("relation must be one of <=, <, >=, >");
    }
    push_row(std::move(row));
    prune();
}

void RationalLinearSystem::push_row(RationalInequality row) {
    bool all_zero = true;
    for (const auto& c : row.coeff)
        if (c != 0) {
            all_zero = false;
            break;
        }
    if (all_zero) {
        // 0 <= rhs / 0 < rhs: either vacuous or contradictory; strictness
        // decides the reading under which it contradicts.
        if (row.rhs < 0) {
            infeasible_strict_ = true;
            infeasible_closed_ = true;
        } else if (row.rhs == 0 && row.rel == Rel::LT) {
            infeasible_strict_ = true;
        }
        return;
    }
    // Canonical scale: integer coefficients with gcd 1, positive multiplier.
    mpz_class lcm_den = 1;
    for (const auto& c : row.coeff) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
    Rat scale{lcm_den, 1};
    for (auto& c : row.coeff) c *= scale;
    row.rhs *= scale;
    mpz_class g = 0;
    for (const auto& c : row.coeff) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
    if (g > 1) {
        Rat inv{1, g};
        for (auto& c : row.coeff) c *= inv;
        row.rhs *= inv;
    }
    for (auto& c : row.coeff) c.canonicalize();
    row.rhs.canonicalize();
    rows_.push_back(std::move(row));
}

void RationalLinearSystem::prune() {
    // Same coefficient vector: keep the tightest right-hand side.
    std::map<std::vector<Rat>, std::size_t> best;
    std::vector<RationalInequality> kept;
    kept.reserve(rows_.size());
    for (auto& row : rows_) {
        auto it = best.find(row.coeff);
        if (it == best.end()) {
            best.emplace(row.coeff, kept.size());
            kept.push_back(std::move(row));
            continue;
        }
        RationalInequality& cur = kept[it->second];
        bool tighter = row.rhs < cur.rhs ||
                       (row.rhs == cur.rhs && row.rel == Rel::LT && cur.rel == Rel::LE);
        if (tighter) cur = std::move(row);
    }
    rows_ = std::move(kept);

    // Coefficient-wise domination, valid only across coordinates known
    // nonnegative: a*x <= c implies b*x <= d when a >= b componentwise,
    // c <= d, and every coordinate with a > b is nonnegative. Rows with a
    // negative coefficient are never dropped: they encode the lower bounds
    // (including the nonnegativity rows this very rule relies on), and
    // elimination needs them paired against the upper bounds.
    std::vector<bool> drop(rows_.size(), false);
    auto droppable = [&](const RationalInequality& row) {
        for (const auto& c : row.coeff)
            if (c < 0) return false;
        return true;
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (drop[i]) continue;
        for (std::size_t j = 0; j < rows_.size(); ++j) {
            if (i == j || drop[j] || drop[i]) continue;
            const auto& a = rows_[i];
            const auto& b = rows_[j];
            if (!droppable(b)) continue;
            bool dominates = true;
            for (std::size_t k = 0; k < vars_.size() && dominates; ++k) {
                if (a.coeff[k] == b.coeff[k]) continue;
                if (a.coeff[k] > b.coeff[k] && nonneg_[k]) continue;
                dominates = false;
            }
            if (!dominates) continue;
            if (a.rhs < b.rhs || (a.rhs == b.rhs && (a.rel == Rel::LT || b.rel == Rel::LE)))
                drop[j] = true;
        }
    }
    std::vector<RationalInequality> out;
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (!drop[i]) out.push_back(std::move(rows_[i]));
    rows_ = std::move(out);
}

RationalLinearSystem RationalLinearSystem::eliminated(const std::string& var) const {
    std::size_t vi = vars_.size();
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == var) vi = i;
    if (vi == vars_.size()) throw NameError("no variable named '" + var + "'");

    std::vector<std::string> new_vars;
    std::vector<bool> new_nonneg;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (i != vi) {
            new_vars.push_back(vars_[i]);
            new_nonneg.push_back(nonneg_[i]);
        }
    RationalLinearSystem out(new_vars);
    out.nonneg_ = new_nonneg;
    out.infeasible_strict_ = infeasible_strict_;
    out.infeasible_closed_ = infeasible_closed_;
    if (infeasible_closed_) return out;

    auto strip = [&](const RationalInequality& row) {
        RationalInequality r;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (i != vi) r.coeff.push_back(row.coeff[i]);
        r.rel = row.rel;
        r.rhs = row.rhs;
        return r;
    };

    std::vector<const RationalInequality*> lowers, uppers;
    for (const auto& row : rows_) {
        if (row.coeff[vi] == 0)
            out.push_row(strip(row));
        else if (row.coeff[vi] > 0)
            uppers.push_back(&row);
        else
            lowers.push_back(&row);
    }
    for (const auto* lo : lowers) {
        for (const auto* up : uppers) {
            Rat ml = up->coeff[vi];    // > 0, multiplies the lower row
            Rat mu = -lo->coeff[vi];   // > 0, multiplies the upper row
            RationalInequality comb;
            comb.coeff.reserve(vars_.size() - 1);
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                if (i == vi) continue;
                comb.coeff.push_back(lo->coeff[i] * ml + up->coeff[i] * mu);
            }
            comb.rhs = lo->rhs * ml + up->rhs * mu;
            comb.rel = (lo->rel == Rel::LT || up->rel == Rel::LT) ? Rel::LT : Rel::LE;
            out.push_row(std::move(comb));
        }
    }
    out.prune();
    return out;
}

RationalLinearSystem RationalLinearSystem::projected(
    const std::vector<std::string>& keep, const std::vector<std::string>& preferred_order) const {
    for (const auto& k : keep) {
        bool found = false;
        for (const auto& v : vars_) found = found || v == k;
        if (!found) throw NameError("no variable named '" + k + "'");
    }
    auto keeps = [&](const std::string& v) {
        return std::find(keep.begin(), keep.end(), v) != keep.end();
    };
    RationalLinearSystem cur = *this;
    while (true) {
        std::string next;
        for (const auto& p : preferred_order) {
            if (keeps(p)) continue;
            if (std::find(cur.vars_.begin(), cur.vars_.end(), p) != cur.vars_.end()) {
                next = p;
                break;
            }
        }
        if (next.empty()) {
            // fewest involved constraints first
            std::size_t best_count = 0;
            for (const auto& v : cur.vars_) {
                if (keeps(v)) continue;
                std::size_t vi = 0;
                while (cur.vars_[vi] != v) ++vi;
                std::size_t count = 0;
                for (const auto& row : cur.rows_)
                    if (row.coeff[vi] != 0) ++count;
                if (next.empty() || count < best_count) {
                    next = v;
                    best_count = count;
                }
            }
        }
        if (next.empty()) break;
        cur = cur.eliminated(next);
    }
    return cur;
}

bool RationalLinearSystem::contains(const std::vector<Rat>& point, bool closure) const {
    if (closure ? infeasible_closed_ : infeasible_strict_) return false;
    if (point.size() != vars_.size())
        throw ShapeError("point dimension does not match variable count");
    for (const auto& row : rows_) {
        Rat lhs = 0;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (row.coeff[i] != 0) lhs += row.coeff[i] * point[i];
        if (row.rel == Rel::LT && !closure) {
            if (!(lhs < row.rhs)) return false;
        } else {
            if (!(lhs <= row.rhs)) return false;
        }
    }
    return true;
}

std::string RationalLinearSystem::dump() const {
    std::ostringstream os;
    if (infeasible_closed_)
        os << "# infeasible\n";
    else if (infeasible_strict_)
        os << "# infeasible under the strict reading\n";
    for (const auto& row : rows_) {
        bool first = true;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (row.coeff[i] == 0) continue;
            if (!first) os << " + ";
            os << row.coeff[i].get_str() << "*" << vars_[i];
            first = false;
        }
        if (first) os << "0";
        os << (row.rel == Rel::LT ? " < " : " <= ") << row.rhs.get_str() << "\n";
    }
    return os.str();
}

EquivalenceReport systems_equivalent(const RationalLinearSystem& a, const RationalLinearSystem& b,
                                     const std::vector<Rat>& box_hi, std::size_t grid_per_axis,
                                     std::size_t random_samples, std::uint64_t seed) {
    if (a.variables() != b.variables())
        throw std::invalid_argument("systems_equivalent: variable lists differ");
    const std::size_t dim = a.variables().size();
    if (box_hi.size() != dim) throw ShapeError("box dimension does not match variable count");

    if (grid_per_axis < 2) throw std::invalid_argument("grid_per_axis must be at least 2");

    EquivalenceReport rep;
    auto check = [&](const std::vector<Rat>& p) {
        bool ia = a.contains(p, true);
        bool ib = b.contains(p, true);
        ++rep.points_checked;
        if (ia != ib) {
            rep.equivalent = false;
            rep.counterexample = p;
            rep.in_first = ia;
            rep.in_second = ib;
            return false;
        }
        return true;
    };

    // Deterministic grid (row-major odometer over all axes).
    std::vector<std::size_t> digit(dim, 0);
    std::vector<Rat> p(dim);
    bool done = dim == 0;
    while (!done) {
        for (std::size_t i = 0; i < dim; ++i) {
            Rat frac(mpz_class(static_cast<unsigned long>(digit[i])),
                     mpz_class(static_cast<unsigned long>(grid_per_axis - 1)));
            frac.canonicalize();
            p[i] = box_hi[i] * frac;
        }
        if (!check(p)) return rep;
        std::size_t ax = dim;
        while (ax-- > 0) {
            if (++digit[ax] < grid_per_axis) break;
            digit[ax] = 0;
            if (ax == 0) done = true;
        }
        if (dim == 0) break;
    }

    SplitMix64 rng(seed);
    const unsigned long den = 1UL << 20;
    for (std::size_t s = 0; s < random_samples; ++s) {
        for (std::size_t i = 0; i < dim; ++i) {
            Rat frac(mpz_class(static_cast<unsigned long>(rng.below(den + 1))), mpz_class(den));
            frac.canonicalize();
            p[i] = box_hi[i] * frac;
        }
        if (!check(p)) return rep;
    }
    return rep;
}

}  // namespace macsense
