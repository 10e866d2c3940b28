#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "liegrad/errors.hpp"

namespace liegrad {

using Int = mpz_class;
using Rat = mpq_class;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Element of the cyclotomic field Q(zeta_N): a polynomial in zeta_N with
/// rational coefficients, reduced mod Phi_N.  Canonical form: degree <
/// phi(N), trailing zero coefficients trimmed, zero = empty vector.
/// Immutable value type.
class Scalar {
public:
    Scalar() = default;
    Scalar(FieldPtr field, std::vector<Rat> coeffs);

    const FieldPtr& field() const { return fld_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.size() <= 1; }
    /// Value as a rational; requires is_rational().
    Rat rational_value() const;

    Scalar operator-() const;
    Scalar inverse() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar pow(long e) const;

    /// Coefficient strings in ascending power order, e.g. ["1/2", "-3"].
    std::vector<std::string> to_strings() const;
    std::string to_string() const;

private:
    FieldPtr fld_;
    std::vector<Rat> c_;
};

/// The cyclotomic field Q(zeta_N) for a fixed conductor N.  Read-only after
/// construction; shared by the scalars living in it.
class Field : public std::enable_shared_from_this<Field> {
public:
    static FieldPtr make(unsigned long conductor);

    unsigned long conductor() const { return n_; }
    /// Degree phi(N) of the extension.
    unsigned long degree() const { return static_cast<unsigned long>(modulus_.size()) - 1; }
    /// Coefficients of Phi_N, ascending, monic.
    const std::vector<Int>& modulus() const { return modulus_; }

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(long v) const;
    Scalar from_rat(const Rat& v) const;
    Scalar from_strings(const std::vector<std::string>& coeff_strings) const;

    /// zeta_N^(N/n), a primitive n-th root of unity.  Throws
    /// OrderUnavailableError unless n divides N.
    Scalar root_of_unity(unsigned long n) const;
    /// All N powers zeta_N^k, k = 0..N-1.
    std::vector<Scalar> all_roots_of_unity() const;

    /// Reduce a raw coefficient vector mod Phi_N and trim.
    std::vector<Rat> reduce(std::vector<Rat> poly) const;

private:
    Field(unsigned long n, std::vector<Int> modulus);

    unsigned long n_;
    std::vector<Int> modulus_;
};

/// Field with conductor lcm of the requested root orders.
FieldPtr make_field(const std::vector<unsigned long>& orders);

/// Coefficients of the n-th cyclotomic polynomial, ascending.
std::vector<Int> cyclotomic_polynomial(unsigned long n);

} // namespace liegrad
