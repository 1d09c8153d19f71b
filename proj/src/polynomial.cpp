#include "ptasynth/polynomial.hpp"

#include "ptasynth/error.hpp"

#include <algorithm>
#include <sstream>

namespace ptasynth {

// ============================================================================
// UPoly
// ============================================================================

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    for (auto& c : c_) c.canonicalize();
    trim();
}

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::constant(const Rational& c) { return UPoly({c}); }

UPoly UPoly::monomial(const Rational& c, unsigned degree) {
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return UPoly(std::move(v));
}

UPoly UPoly::linear_root(const Rational& r) { return UPoly({-r, Rational(1)}); }

Rational UPoly::eval(const Rational& t) const {
    Rational acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
    return acc;
}

UPoly UPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
    if (is_zero()) return {};
    return *this * (Rational(1) / leading());
}

UPoly UPoly::primitive() const {
    if (is_zero()) return {};
    Integer den_lcm = 1;
    for (const auto& c : c_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> nums;
    Integer g = 0;
    for (const auto& c : c_) {
        Rational scaled = c * den_lcm;
        nums.push_back(scaled.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_num_mpz_t());
    }
    if (nums.back() < 0) g = -g;
    std::vector<Rational> out;
    for (const auto& n : nums) out.emplace_back(Integer(n / g));
    return UPoly(std::move(out));
}

UPoly UPoly::square_free() const {
    if (degree() < 1) return *this;
    UPoly g = gcd(*this, derivative());
    return exact_div(*this, g).primitive();
}

UPoly UPoly::operator-() const { return *this * Rational(-1); }

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return UPoly(std::move(v));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(v));
}

UPoly operator*(const UPoly& a, const Rational& k) {
    std::vector<Rational> v = a.c_;
    for (auto& c : v) c *= k;
    return UPoly(std::move(v));
}

bool operator<(const UPoly& a, const UPoly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = a.c_.size(); i-- > 0;) {
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    }
    return false;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw PreconditionError("polynomial division by zero");
    std::vector<Rational> r = a.c_;
    int db = b.degree();
    if (a.degree() < db) return {UPoly(), a};
    std::vector<Rational> q(a.degree() - db + 1, Rational(0));
    const Rational& lb = b.c_.back();
    for (int i = a.degree(); i >= db; --i) {
        if (r[i] == 0) continue;
        Rational f = r[i] / lb;
        q[i - db] = f;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.c_[j];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly UPoly::exact_div(const UPoly& a, const UPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw PreconditionError("inexact polynomial division");
    return q;
}

UPoly UPoly::gcd(const UPoly& a, const UPoly& b) {
    UPoly x = a, y = b;
    while (!y.is_zero()) {
        UPoly r = divmod(x, y).second;
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

std::string UPoly::render(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const Rational& c = c_[i];
        if (c == 0) continue;
        Rational mag = abs(c);
        if (c < 0)
            os << "-";
        else if (!first)
            os << "+";
        if (i == 0 || mag != 1) {
            os << to_string(mag);
            if (i > 0) os << "*";
        }
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

// ============================================================================
// Sturm sequences
// ============================================================================

std::vector<UPoly> sturm_chain(const UPoly& f) {
    std::vector<UPoly> chain;
    if (f.is_zero()) return chain;
    chain.push_back(f);
    UPoly d = f.derivative();
    if (d.is_zero()) return chain;
    chain.push_back(d);
    for (;;) {
        UPoly r = UPoly::divmod(chain[chain.size() - 2], chain.back()).second;
        if (r.is_zero()) break;
        // Positive rescaling keeps the sign pattern and the numbers small.
        UPoly next = -r;
        Rational lc = abs(next.leading());
        chain.push_back(next * (Rational(1) / lc));
    }
    return chain;
}

namespace {

std::size_t variations(const std::vector<UPoly>& chain, const Rational& t) {
    std::size_t v = 0;
    int last = 0;
    for (const auto& p : chain) {
        int s = p.sign_at(t);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

}  // namespace

std::size_t count_roots(const std::vector<UPoly>& chain, const Rational& a, const Rational& b) {
    if (chain.empty() || !(a < b)) return 0;
    std::size_t va = variations(chain, a);
    std::size_t vb = variations(chain, b);
    return va > vb ? va - vb : 0;
}

Rational cauchy_bound(const UPoly& f) {
    Rational m = 0;
    for (int i = 0; i < f.degree(); ++i) {
        Rational r = abs(f.coeff(i) / f.leading());
        if (r > m) m = r;
    }
    return m + 1;
}

// ============================================================================
// BPoly and resultants
// ============================================================================

BPoly::BPoly(std::vector<UPoly> coeffs) : c_(std::move(coeffs)) { trim(); }

void BPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

BPoly BPoly::reductum() const {
    if (c_.empty()) return {};
    return BPoly(std::vector<UPoly>(c_.begin(), c_.end() - 1));
}

BPoly BPoly::derivative_x() const {
    if (c_.size() <= 1) return {};
    std::vector<UPoly> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<long>(i)));
    return BPoly(std::move(d));
}

UPoly BPoly::at_p(const Rational& p) const {
    std::vector<Rational> v;
    for (const auto& c : c_) v.push_back(c.eval(p));
    return UPoly(std::move(v));
}

UPoly resultant_x(const BPoly& f, const BPoly& g) {
    int m = f.degree_x();
    int k = g.degree_x();
    if (m < 1 || k < 1) throw PreconditionError("resultant needs positive x-degrees");
    int n = m + k;
    std::vector<std::vector<UPoly>> mat(n, std::vector<UPoly>(n));
    for (int r = 0; r < k; ++r)
        for (int i = 0; i <= m; ++i) mat[r][r + i] = f.coeffs()[m - i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= k; ++i) mat[k + r][r + i] = g.coeffs()[k - i];

    // Bareiss: every division below is exact in Q[p].
    UPoly prev = UPoly::constant(1);
    bool negate = false;
    for (int c = 0; c < n - 1; ++c) {
        if (mat[c][c].is_zero()) {
            int swap_row = -1;
            for (int r = c + 1; r < n; ++r)
                if (!mat[r][c].is_zero()) {
                    swap_row = r;
                    break;
                }
            if (swap_row < 0) return {};
            std::swap(mat[c], mat[swap_row]);
            negate = !negate;
        }
        for (int r = c + 1; r < n; ++r) {
            for (int j = c + 1; j < n; ++j) {
                UPoly num = mat[c][c] * mat[r][j] - mat[r][c] * mat[c][j];
                mat[r][j] = UPoly::exact_div(num, prev);
            }
            mat[r][c] = UPoly();
        }
        prev = mat[c][c];
    }
    UPoly det = mat[n - 1][n - 1];
    return negate ? -det : det;
}

}  // namespace ptasynth
