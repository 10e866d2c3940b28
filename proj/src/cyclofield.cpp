#include "liegrad/cyclofield.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace liegrad {

namespace {

void trim(std::vector<Rat>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division of integer polynomials, remainder must vanish.
std::vector<Int> int_poly_divide(const std::vector<Int>& num, const std::vector<Int>& den) {
    std::vector<Int> rem = num;
    std::vector<Int> quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
    while (rem.size() >= den.size() && !rem.empty()) {
        if (rem.back() == 0) {
            rem.pop_back();
            continue;
        }
        Int lead = rem.back() / den.back();
        size_t shift = rem.size() - den.size();
        quot[shift] = lead;
        for (size_t i = 0; i < den.size(); ++i) rem[shift + i] -= lead * den[i];
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
    }
    if (!rem.empty()) throw Error("int_poly_divide: nonzero remainder");
    return quot;
}

std::vector<Int> cyclotomic_impl(unsigned long n, std::map<unsigned long, std::vector<Int>>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    // x^n - 1 divided by the cyclotomic polynomials of the proper divisors.
    std::vector<Int> poly(n + 1, Int(0));
    poly[0] = -1;
    poly[n] = 1;
    for (unsigned long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        poly = int_poly_divide(poly, cyclotomic_impl(d, memo));
    }
    memo[n] = poly;
    return poly;
}

} // namespace

std::vector<Int> cyclotomic_polynomial(unsigned long n) {
    if (n == 0) throw Error("cyclotomic_polynomial: n must be positive");
    std::map<unsigned long, std::vector<Int>> memo;
    return cyclotomic_impl(n, memo);
}

Scalar::Scalar(FieldPtr field, std::vector<Rat> coeffs) : fld_(std::move(field)), c_(std::move(coeffs)) {
    trim(c_);
}

Rat Scalar::rational_value() const {
    if (c_.empty()) return Rat(0);
    if (c_.size() > 1) throw Error("Scalar::rational_value: element is not rational");
    return c_[0];
}

Scalar Scalar::operator-() const {
    std::vector<Rat> r(c_);
    for (auto& x : r) x = -x;
    return Scalar(fld_, std::move(r));
}

namespace {
void check_same_field(const Scalar& a, const Scalar& b) {
    if (a.field() && b.field() && a.field() != b.field())
        throw Error("Scalar: mixed fields");
}
FieldPtr pick_field(const Scalar& a, const Scalar& b) {
    return a.field() ? a.field() : b.field();
}
} // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
    check_same_field(a, b);
    std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Scalar(pick_field(a, b), std::move(r));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    check_same_field(a, b);
    FieldPtr f = pick_field(a, b);
    if (a.c_.empty() || b.c_.empty()) return Scalar(f, {});
    std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    if (!f) throw Error("Scalar: product without field context");
    return Scalar(f, f->reduce(std::move(r)));
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (size_t i = 0; i < a.c_.size(); ++i)
        if (a.c_[i] != b.c_[i]) return false;
    return true;
}

namespace {

// Polynomial arithmetic over Q used by the extended Euclid for inverses.
std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

std::vector<Rat> poly_sub(std::vector<Rat> a, const std::vector<Rat>& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rat(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

// a = q*b + r with deg r < deg b.
std::pair<std::vector<Rat>, std::vector<Rat>> poly_divmod(std::vector<Rat> a, const std::vector<Rat>& b) {
    if (b.empty()) throw DivisionByZeroError("poly_divmod: division by zero polynomial");
    std::vector<Rat> q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rat(0));
    // Each step cancels the leading coefficient exactly, so a shrinks.
    while (a.size() >= b.size()) {
        Rat lead = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = lead;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= lead * b[i];
        trim(a);
    }
    return {q, a};
}

} // namespace

Scalar Scalar::inverse() const {
    if (c_.empty()) throw DivisionByZeroError("Scalar::inverse: division by zero");
    if (!fld_) throw Error("Scalar::inverse: no field context");
    if (c_.size() == 1) return Scalar(fld_, {Rat(1) / c_[0]});
    // Extended Euclid: s*a + t*Phi = gcd = const, so a^{-1} = s/const.
    std::vector<Rat> r0(fld_->modulus().size());
    for (size_t i = 0; i < r0.size(); ++i) r0[i] = Rat(fld_->modulus()[i]);
    std::vector<Rat> r1 = c_;
    std::vector<Rat> s0 = {};         // coefficient of a in r0
    std::vector<Rat> s1 = {Rat(1)};   // coefficient of a in r1
    while (r1.size() > 1) {
        auto [q, r2] = poly_divmod(r0, r1);
        auto s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) throw Error("Scalar::inverse: modulus not coprime to element");
    Rat g = r1[0];
    for (auto& x : s1) x /= g;
    return Scalar(fld_, fld_->reduce(std::move(s1)));
}

Scalar Scalar::pow(long e) const {
    if (!fld_) throw Error("Scalar::pow: no field context");
    if (e < 0) return inverse().pow(-e);
    Scalar result = fld_->one();
    Scalar base = *this;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

std::vector<std::string> Scalar::to_strings() const {
    std::vector<std::string> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(x.get_str());
    return out;
}

std::string Scalar::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        os << c_[i].get_str();
        if (i == 1) os << "*z";
        if (i > 1) os << "*z^" << i;
        first = false;
    }
    return os.str();
}

Field::Field(unsigned long n, std::vector<Int> modulus) : n_(n), modulus_(std::move(modulus)) {}

FieldPtr Field::make(unsigned long conductor) {
    if (conductor == 0) throw Error("Field: conductor must be positive");
    // one shared instance per conductor, so scalars from independent
    // construction paths interoperate
    static std::mutex mu;
    static std::map<unsigned long, FieldPtr> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry.find(conductor);
    if (it != registry.end()) return it->second;
    FieldPtr f(new Field(conductor, cyclotomic_polynomial(conductor)));
    registry.emplace(conductor, f);
    return f;
}

Scalar Field::zero() const { return Scalar(shared_from_this(), {}); }

Scalar Field::one() const { return Scalar(shared_from_this(), {Rat(1)}); }

Scalar Field::from_int(long v) const { return Scalar(shared_from_this(), {Rat(v)}); }

Scalar Field::from_rat(const Rat& v) const { return Scalar(shared_from_this(), {v}); }

Scalar Field::from_strings(const std::vector<std::string>& coeff_strings) const {
    std::vector<Rat> c;
    c.reserve(coeff_strings.size());
    for (const auto& s : coeff_strings) {
        Rat x(s);
        x.canonicalize();
        c.push_back(x);
    }
    return Scalar(shared_from_this(), reduce(std::move(c)));
}

Scalar Field::root_of_unity(unsigned long n) const {
    if (n == 0 || n_ % n != 0)
        throw OrderUnavailableError("root_of_unity: order " + std::to_string(n) +
                                    " unavailable in Q(zeta_" + std::to_string(n_) + ")");
    unsigned long k = n_ / n;
    std::vector<Rat> p(k + 1, Rat(0));
    p[k] = 1;
    return Scalar(shared_from_this(), reduce(std::move(p)));
}

std::vector<Scalar> Field::all_roots_of_unity() const {
    std::vector<Scalar> out;
    out.reserve(n_);
    Scalar z = root_of_unity(n_);
    Scalar cur = one();
    for (unsigned long k = 0; k < n_; ++k) {
        out.push_back(cur);
        cur = cur * z;
    }
    return out;
}

std::vector<Rat> Field::reduce(std::vector<Rat> poly) const {
    const size_t deg = modulus_.size() - 1; // phi(N), modulus monic
    while (poly.size() > deg) {
        if (poly.back() == 0) {
            poly.pop_back();
            continue;
        }
        Rat lead = poly.back();
        size_t shift = poly.size() - 1 - deg;
        for (size_t i = 0; i + 1 < modulus_.size(); ++i) poly[shift + i] -= lead * Rat(modulus_[i]);
        poly.pop_back();
    }
    trim(poly);
    return poly;
}

FieldPtr make_field(const std::vector<unsigned long>& orders) {
    if (orders.empty()) throw Error("make_field: order list must be nonempty");
    unsigned long n = 1;
    for (unsigned long k : orders) {
        if (k == 0) throw Error("make_field: orders must be positive");
        n = std::lcm(n, k);
    }
    return Field::make(n);
}

} // namespace liegrad
