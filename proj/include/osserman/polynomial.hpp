#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/miller_rabin.hpp>

#include "osserman/matrix.hpp"
#include "osserman/rational.hpp"

namespace osserman {

/// Univariate polynomial over the rationals, coefficients lowest degree
/// first. The zero polynomial stores no coefficients; otherwise the leading
/// coefficient is nonzero.
class Polynomial {
public:
    Polynomial() = default;

    explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
        normalize();
    }

    Polynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { normalize(); }

    static Polynomial constant(Rational c) { return Polynomial{std::move(c)}; }

    static Polynomial monomial(Rational c, std::size_t k) {
        std::vector<Rational> v(k + 1);
        v[k] = std::move(c);
        return Polynomial(std::move(v));
    }

    /// (x - r0)(x - r1)...
    static Polynomial from_roots(const std::vector<Rational>& roots) {
        Polynomial p{1};
        for (const auto& r : roots) p = p * Polynomial{-r, 1};
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }

    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const Rational& coeff(std::size_t k) const {
        static const Rational zero = 0;
        return k < coeffs_.size() ? coeffs_[k] : zero;
    }

    const Rational& leading() const {
        if (is_zero()) throw std::domain_error("Polynomial: zero polynomial has no leading coefficient");
        return coeffs_.back();
    }

    const std::vector<Rational>& coefficients() const { return coeffs_; }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
        return Polynomial(std::move(c));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
        return Polynomial(std::move(c));
    }

    Polynomial operator-() const {
        std::vector<Rational> c(coeffs_);
        for (auto& e : c) e = -e;
        return Polynomial(std::move(c));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                if (b.coeffs_[j] != 0) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Polynomial(std::move(c));
    }

    friend Polynomial operator*(const Rational& s, const Polynomial& p) {
        std::vector<Rational> c(p.coeffs_);
        for (auto& e : c) e *= s;
        return Polynomial(std::move(c));
    }

    bool operator==(const Polynomial& other) const = default;

    /// Lexicographic order by (degree, coefficients from highest down);
    /// gives polynomials a deterministic order for use as map keys.
    std::strong_ordering operator<=>(const Polynomial& other) const {
        if (auto c = degree() <=> other.degree(); c != 0) return c;
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            if (coeffs_[k] < other.coeffs_[k]) return std::strong_ordering::less;
            if (coeffs_[k] > other.coeffs_[k]) return std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

    /// Quotient and remainder; divisor must be nonzero.
    friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den) {
        if (den.is_zero()) throw std::domain_error("Polynomial: division by zero polynomial");
        Polynomial r = num;
        std::vector<Rational> q;
        if (num.degree() >= den.degree()) q.resize(num.degree() - den.degree() + 1);
        while (!r.is_zero() && r.degree() >= den.degree()) {
            const std::size_t shift = r.degree() - den.degree();
            Rational factor = r.leading() / den.leading();
            q[shift] = factor;
            Polynomial sub = Polynomial::monomial(std::move(factor), shift) * den;
            r = r - sub;
        }
        return {Polynomial(std::move(q)), std::move(r)};
    }

    friend Polynomial operator/(const Polynomial& num, const Polynomial& den) {
        auto [q, r] = divmod(num, den);
        if (!r.is_zero()) throw std::domain_error("Polynomial: inexact division");
        return q;
    }

    bool divides(const Polynomial& num) const { return divmod(num, *this).second.is_zero(); }

    Polynomial derivative() const {
        if (coeffs_.size() <= 1) return Polynomial();
        std::vector<Rational> c(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = Rational(i) * coeffs_[i];
        return Polynomial(std::move(c));
    }

    Polynomial monic() const {
        if (is_zero()) return *this;
        return (Rational(1) / leading()) * *this;
    }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
        return acc;
    }

    /// Evaluates the polynomial at a square matrix.
    Matrix operator()(const Matrix& m) const {
        if (!m.is_square()) throw std::invalid_argument("Polynomial: matrix evaluation needs a square matrix");
        Matrix acc(m.rows(), m.cols());
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            acc = acc * m;
            if (coeffs_[k] != 0) acc += coeffs_[k] * Matrix::identity(m.rows());
        }
        return acc;
    }

    Polynomial pow(std::size_t k) const {
        Polynomial result{1};
        Polynomial base = *this;
        while (k > 0) {
            if (k & 1) result = result * base;
            k >>= 1;
            if (k > 0) base = base * base;
        }
        return result;
    }

    static Polynomial gcd(Polynomial a, Polynomial b) {
        while (!b.is_zero()) {
            Polynomial r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            const Rational& c = coeffs_[k];
            if (c == 0) continue;
            const Rational mag = abs(c);
            if (first) {
                if (c < 0) os << "-";
                first = false;
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            if (k == 0 || mag != 1) os << mag.str();
            if (k > 0) {
                if (mag != 1) os << "*";
                os << var;
                if (k > 1) os << "^" << k;
            }
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
        return os << p.to_string();
    }

private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

/// One square-free factor together with its multiplicity in the input.
struct SquarefreeFactor {
    Polynomial factor;  // monic, square-free, degree >= 1
    std::size_t multiplicity = 0;
};

/// Yun's algorithm. Returns pairwise-coprime monic square-free factors
/// f = lead * prod factor_i ^ multiplicity_i.
inline std::vector<SquarefreeFactor> squarefree_decomposition(const Polynomial& f) {
    if (f.is_zero()) throw std::domain_error("squarefree_decomposition: zero polynomial");
    std::vector<SquarefreeFactor> out;
    Polynomial p = f.monic();
    if (p.degree() < 1) return out;

    Polynomial d = p.derivative();
    Polynomial g = Polynomial::gcd(p, d);
    if (g.degree() == 0) {
        out.push_back({p, 1});
        return out;
    }
    Polynomial c = p / g;
    Polynomial w = d / g - c.derivative();
    std::size_t i = 1;
    while (c.degree() > 0) {
        Polynomial y = Polynomial::gcd(c, w);
        if (y.degree() > 0) out.push_back({y, i});
        c = c / y;
        w = w / y - c.derivative();
        ++i;
    }
    return out;
}

namespace detail {

/// Deterministic Miller-Rabin + Pollard rho factorization of |n|, best
/// effort: factors that resist the iteration budget stay unsplit.
inline void factor_integer(Integer n, std::map<Integer, std::size_t>& out) {
    if (n < 0) n = -n;
    if (n <= 1) return;
    for (Integer p : {Integer(2), Integer(3), Integer(5)}) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    Integer d = 7;
    const Integer trial_limit = 100000;
    static const int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    int w = 0;
    while (d <= trial_limit && d * d <= n) {
        while (n % d == 0) {
            ++out[d];
            n /= d;
        }
        d += wheel[w];
        w = (w + 1) & 7;
    }
    if (n == 1) return;
    if (n < trial_limit * trial_limit || boost::multiprecision::miller_rabin_test(n, 32)) {
        ++out[n];
        return;
    }
    // Pollard rho (Brent's variant), fixed parameters for determinism.
    for (Integer c = 1; c < 32; ++c) {
        Integer x = 2, y = 2, prod = 1, factor = 1;
        for (std::size_t it = 0; it < 200000; ++it) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Integer diff = x >= y ? x - y : y - x;
            if (diff == 0) break;
            prod = (prod * diff) % n;
            if ((it & 63) == 63) {
                factor = boost::multiprecision::gcd(prod, n);
                if (factor > 1) break;
            }
        }
        if (factor == 1) factor = boost::multiprecision::gcd(prod, n);
        if (factor > 1 && factor < n) {
            factor_integer(factor, out);
            factor_integer(n / factor, out);
            return;
        }
    }
    ++out[n];  // unsplit remainder, kept as a divisor atom
}

inline std::vector<Integer> divisors(const Integer& n, std::size_t cap = 1u << 16) {
    std::map<Integer, std::size_t> primes;
    factor_integer(n, primes);
    std::vector<Integer> divs{1};
    for (const auto& [p, e] : primes) {
        const std::size_t base = divs.size();
        Integer pk = 1;
        for (std::size_t k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) {
                divs.push_back(divs[i] * pk);
                if (divs.size() > cap) return {};  // give up, caller treats as rootless
            }
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace detail

/// All rational roots of p (each listed once). Complete whenever the
/// constant and leading coefficients factor within the internal budget,
/// which covers every polynomial this library produces at its working
/// dimensions; always deterministic.
inline std::vector<Rational> rational_roots(const Polynomial& p) {
    std::vector<Rational> roots;
    if (p.is_zero() || p.degree() < 1) return roots;

    // integer-coefficient image: multiply by lcm of denominators
    Integer den_lcm = 1;
    for (const auto& c : p.coefficients()) den_lcm = lcm(den_lcm, denominator(c));
    std::vector<Integer> b(p.coefficients().size());
    for (std::size_t i = 0; i < b.size(); ++i)
        b[i] = numerator(p.coefficients()[i]) * (den_lcm / denominator(p.coefficients()[i]));

    std::size_t low = 0;
    while (low < b.size() && b[low] == 0) ++low;
    if (low > 0) roots.push_back(0);
    if (low + 1 >= b.size()) return roots;  // b is c*x^k

    const Integer& b0 = b[low];
    const Integer& bn = b.back();
    const auto num_divs = detail::divisors(b0);
    const auto den_divs = detail::divisors(bn);
    for (const auto& u : num_divs) {
        for (const auto& v : den_divs) {
            if (boost::multiprecision::gcd(u, v) != 1) continue;
            for (int sign : {1, -1}) {
                Rational cand = make_rational(sign * u, v);
                if (p(cand) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace osserman
