#include "ptasynth/algebraic.hpp"

#include "ptasynth/error.hpp"

#include <functional>
#include <sstream>

namespace ptasynth {

namespace {

const Integer kDivisorSearchLimit("1000000");

std::vector<Integer> divisors(const Integer& n) {
    std::vector<Integer> small, large;
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

}  // namespace

AlgebraicNumber::AlgebraicNumber(const Rational& r) : f_(UPoly::linear_root(r)), lo_(r), hi_(r), exact_(r) {}

AlgebraicNumber::AlgebraicNumber(UPoly f, Rational lo, Rational hi)
    : f_(f.square_free()), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (f_.degree() < 1) throw PreconditionError("algebraic number needs a nonconstant polynomial");
    if (f_.sign_at(hi_) == 0) {
        exact_ = hi_;
    } else if (f_.degree() == 1) {
        exact_ = -f_.coeff(0) / f_.coeff(1);
    }
    if (exact_) {
        lo_ = hi_ = *exact_;
        return;
    }
    chain_ = sturm_chain(f_);
    // A rational root u/v of a primitive polynomial has v dividing the
    // leading coefficient, so a narrow interval holds at most one candidate
    // per divisor.
    Integer lc = abs(f_.leading().get_num());
    if (lc > kDivisorSearchLimit) return;
    refine_to(Rational(1) / (2 * lc));
    if (exact_) return;
    for (const Integer& v : divisors(lc)) {
        Integer first = ceil_of(lo_ * v);
        Integer last = floor_of(hi_ * v);
        for (Integer u = first; u <= last; ++u) {
            Rational cand(u, v);
            cand.canonicalize();
            if (cand > lo_ && cand < hi_ && f_.sign_at(cand) == 0) {
                exact_ = cand;
                lo_ = hi_ = cand;
                return;
            }
        }
    }
}

void AlgebraicNumber::refine() const {
    if (exact_) return;
    Rational mid = (lo_ + hi_) / 2;
    if (f_.sign_at(mid) == 0) {
        exact_ = mid;
        lo_ = hi_ = mid;
        return;
    }
    if (count_roots(chain_, lo_, mid) > 0)
        hi_ = mid;
    else
        lo_ = mid;
}

void AlgebraicNumber::refine_to(const Rational& width) const {
    while (!exact_ && hi_ - lo_ >= width) refine();
}

int AlgebraicNumber::sign_of(const UPoly& g) const {
    if (exact_) return g.sign_at(*exact_);
    if (g.is_zero()) return 0;
    UPoly h = UPoly::gcd(f_, g);
    if (h.degree() >= 1 && count_roots(sturm_chain(h), lo_, hi_) > 0) return 0;
    std::vector<UPoly> gc = sturm_chain(g.square_free());
    while (!exact_ && count_roots(gc, lo_, hi_) > 0) refine();
    if (exact_) return g.sign_at(*exact_);
    return g.sign_at(hi_);
}

int AlgebraicNumber::compare(const Rational& r) const {
    for (;;) {
        if (exact_) return cmp(*exact_, r) < 0 ? -1 : (*exact_ == r ? 0 : 1);
        if (r <= lo_) return 1;
        if (r >= hi_) return -1;
        if (f_.sign_at(r) == 0) return 0;
        refine();
    }
}

int AlgebraicNumber::compare(const AlgebraicNumber& other) const {
    if (exact_) return -other.compare(*exact_);
    if (other.exact_) return compare(*other.exact_);
    UPoly g = UPoly::gcd(f_, other.f_);
    std::vector<UPoly> gc = g.degree() >= 1 ? sturm_chain(g) : std::vector<UPoly>{};
    for (;;) {
        if (exact_ || other.exact_) return compare(other);
        if (hi_ <= other.lo_) return -1;
        if (other.hi_ <= lo_) return 1;
        Rational a = lo_ > other.lo_ ? lo_ : other.lo_;
        Rational b = hi_ < other.hi_ ? hi_ : other.hi_;
        if (!gc.empty() && count_roots(gc, a, b) > 0) return 0;
        refine();
        other.refine();
    }
}

Rational AlgebraicNumber::rational_between(const AlgebraicNumber& other) const {
    for (;;) {
        const Rational& u = exact_ ? *exact_ : hi_;
        const Rational& v = other.exact_ ? *other.exact_ : other.lo_;
        if (u < v || (u == v && !exact_ && !other.exact_)) return (u + v) / 2;
        refine();
        other.refine();
    }
}

double AlgebraicNumber::approx() const {
    if (exact_) return exact_->get_d();
    refine_to(Rational(1, 1u << 30));
    if (exact_) return exact_->get_d();
    return Rational((lo_ + hi_) / 2).get_d();
}

std::string AlgebraicNumber::render() const {
    if (exact_) return to_string(*exact_);
    std::ostringstream os;
    os << "root of " << f_.render("t") << " in (" << to_string(lo_) << ", " << to_string(hi_) << ")";
    return os.str();
}

std::vector<AlgebraicNumber> isolate_real_roots(const UPoly& f) {
    if (f.is_zero()) throw PreconditionError("root isolation of the zero polynomial");
    UPoly sf = f.square_free();
    std::vector<AlgebraicNumber> out;
    if (sf.degree() < 1) return out;
    std::vector<UPoly> chain = sturm_chain(sf);
    Rational bound = cauchy_bound(sf);
    std::function<void(const Rational&, const Rational&)> split = [&](const Rational& a, const Rational& b) {
        std::size_t n = count_roots(chain, a, b);
        if (n == 0) return;
        if (n == 1) {
            out.emplace_back(sf, a, b);
            return;
        }
        Rational mid = (a + b) / 2;
        split(a, mid);
        split(mid, b);
    };
    split(-bound, bound);
    return out;
}

UPoly to_upoly(const Expression& e, ParamId p) {
    if (e.is_infinite()) throw PreconditionError("infinite expression has no polynomial form");
    std::vector<Rational> c;
    for (const auto& [mono, coeff] : e.terms()) {
        unsigned deg = 0;
        for (const auto& [q, k] : mono) {
            if (q != p) throw PreconditionError("expression mentions a second parameter");
            deg = k;
        }
        if (c.size() <= deg) c.resize(deg + 1, Rational(0));
        c[deg] += Rational(coeff);
    }
    return UPoly(std::move(c));
}

// ============================================================================
// ParamPoint
// ============================================================================

ParamPoint::ParamPoint(ParameterValuation gamma) : gamma_(std::move(gamma)) {}

ParamPoint::ParamPoint(ParamId p, AlgebraicNumber alpha) {
    if (alpha.is_rational())
        gamma_[p] = alpha.rational();
    else
        alg_.emplace(p, std::move(alpha));
}

bool ParamPoint::is_rational() const { return !alg_.has_value(); }

AlgebraicNumber ParamPoint::coordinate(ParamId p) const {
    if (alg_ && alg_->first == p) return alg_->second;
    auto it = gamma_.find(p);
    return AlgebraicNumber(it == gamma_.end() ? Rational(0) : it->second);
}

std::optional<ParameterValuation> ParamPoint::rational() const {
    if (alg_) return std::nullopt;
    return gamma_;
}

int ParamPoint::sign(const Expression& e) const {
    if (e.is_infinite()) return 1;
    if (!alg_) return sgn(e.evaluate_finite(gamma_));
    return alg_->second.sign_of(to_upoly(e, alg_->first));
}

int ParamPoint::compare(const Expression& a, const Expression& b) const {
    if (a.is_infinite() || b.is_infinite()) return int(a.is_infinite()) - int(b.is_infinite());
    return sign(a - b);
}

std::string ParamPoint::render(const std::vector<std::string>& names) const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, v] : gamma_) {
        os << (first ? "" : ", ") << names.at(p) << "=" << to_string(v);
        first = false;
    }
    if (alg_) os << (first ? "" : ", ") << names.at(alg_->first) << "=" << alg_->second.render();
    return os.str();
}

}  // namespace ptasynth
