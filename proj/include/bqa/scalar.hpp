#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bqa {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldError : Error {
    using Error::Error;
};

enum class FieldKind { Rationals, Prime };

/// Coefficient field of a computation: the rationals, or a prime field F_p.
/// Prime moduli are restricted to [101, 2^31) so residue products fit in
/// 64-bit arithmetic.
struct FieldDescriptor {
    FieldKind kind = FieldKind::Rationals;
    std::uint64_t p = 0;

    static FieldDescriptor rationals() { return FieldDescriptor{FieldKind::Rationals, 0}; }

    static FieldDescriptor prime(std::uint64_t p) {
        if (p < 101) throw FieldError("prime field modulus must be at least 101");
        if (p >= (std::uint64_t{1} << 31)) throw FieldError("prime field modulus must fit in 31 bits");
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) throw FieldError("prime field modulus must be prime: " + std::to_string(p));
        return FieldDescriptor{FieldKind::Prime, p};
    }

    /// Parses "q" (rationals) or "p:<prime>".
    static FieldDescriptor parse(const std::string& text) {
        if (text == "q") return rationals();
        if (text.rfind("p:", 0) == 0) {
            std::uint64_t v = 0;
            try {
                v = std::stoull(text.substr(2));
            } catch (const std::exception&) {
                throw FieldError("malformed field descriptor: " + text);
            }
            return prime(v);
        }
        throw FieldError("malformed field descriptor: " + text);
    }

    std::string str() const {
        return kind == FieldKind::Rationals ? std::string("q") : "p:" + std::to_string(p);
    }

    bool operator==(const FieldDescriptor&) const = default;
};

/// Immutable exact field element in canonical form: a reduced fraction with
/// positive denominator over the rationals, or a residue in [0, p).
class Scalar {
public:
    Scalar() : field_(FieldDescriptor::rationals()), rat_(0) {}

    static Scalar zero(const FieldDescriptor& f) { return of_int(f, 0); }
    static Scalar one(const FieldDescriptor& f) { return of_int(f, 1); }

    static Scalar of_int(const FieldDescriptor& f, long v) {
        Scalar s;
        s.field_ = f;
        if (f.kind == FieldKind::Rationals) {
            s.rat_ = mpq_class(v);
        } else {
            long r = v % static_cast<long>(f.p);
            if (r < 0) r += static_cast<long>(f.p);
            s.res_ = static_cast<std::uint64_t>(r);
        }
        return s;
    }

    static Scalar of_fraction(const FieldDescriptor& f, long num, long den) {
        if (den == 0) throw FieldError("zero denominator");
        if (f.kind == FieldKind::Rationals) {
            Scalar s;
            s.field_ = f;
            s.rat_ = mpq_class(num, den);
            s.rat_.canonicalize();
            return s;
        }
        return of_int(f, num) / of_int(f, den);
    }

    /// Parses "a", "-a", or "a/b" in the given field.
    static Scalar parse(const FieldDescriptor& f, const std::string& text) {
        auto slash = text.find('/');
        try {
            if (slash == std::string::npos) {
                if (f.kind == FieldKind::Rationals) {
                    Scalar s;
                    s.field_ = f;
                    s.rat_ = mpq_class(mpz_class(text), 1);
                    return s;
                }
                mpz_class z(text);
                mpz_class r = z % static_cast<unsigned long>(f.p);
                if (r < 0) r += static_cast<unsigned long>(f.p);
                Scalar s;
                s.field_ = f;
                s.res_ = r.get_ui();
                return s;
            }
            Scalar num = parse(f, text.substr(0, slash));
            Scalar den = parse(f, text.substr(slash + 1));
            return num / den;
        } catch (const std::invalid_argument&) {
            throw FieldError("malformed scalar: " + text);
        }
    }

    const FieldDescriptor& field() const { return field_; }

    bool is_zero() const {
        return field_.kind == FieldKind::Rationals ? rat_ == 0 : res_ == 0;
    }

    bool is_one() const {
        return field_.kind == FieldKind::Rationals ? rat_ == 1 : res_ == 1;
    }

    Scalar operator-() const {
        Scalar s(*this);
        if (field_.kind == FieldKind::Rationals)
            s.rat_ = -rat_;
        else if (res_ != 0)
            s.res_ = field_.p - res_;
        return s;
    }

    Scalar& operator+=(const Scalar& o) {
        check_same(o);
        if (field_.kind == FieldKind::Rationals) {
            rat_ += o.rat_;
        } else {
            res_ += o.res_;
            if (res_ >= field_.p) res_ -= field_.p;
        }
        return *this;
    }

    Scalar& operator-=(const Scalar& o) { return *this += -o; }

    Scalar& operator*=(const Scalar& o) {
        check_same(o);
        if (field_.kind == FieldKind::Rationals)
            rat_ *= o.rat_;
        else
            res_ = (res_ * o.res_) % field_.p;
        return *this;
    }

    Scalar& operator/=(const Scalar& o) {
        check_same(o);
        if (o.is_zero()) throw FieldError("division by zero");
        if (field_.kind == FieldKind::Rationals)
            rat_ /= o.rat_;
        else
            res_ = (res_ * inv_mod(o.res_, field_.p)) % field_.p;
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    Scalar inverse() const { return one(field_) / *this; }

    Scalar pow(unsigned long e) const {
        Scalar acc = one(field_);
        Scalar base = *this;
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    bool operator==(const Scalar& o) const {
        if (field_ != o.field_) return false;
        return field_.kind == FieldKind::Rationals ? rat_ == o.rat_ : res_ == o.res_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Canonical text form: "a" or "a/b" over the rationals, the residue
    /// in decimal over a prime field. parse() accepts the output.
    std::string str() const {
        if (field_.kind == FieldKind::Rationals) return rat_.get_str();
        return std::to_string(res_);
    }

    /// Rationals only: sign of the canonical fraction.
    int sign() const {
        if (field_.kind == FieldKind::Rationals) return sgn(rat_);
        return res_ == 0 ? 0 : 1;
    }

    /// Rationals only: |value|; identity on prime-field residues.
    Scalar abs() const {
        Scalar s(*this);
        if (field_.kind == FieldKind::Rationals && sgn(rat_) < 0) s.rat_ = -rat_;
        return s;
    }

private:
    void check_same(const Scalar& o) const {
        if (field_ != o.field_) throw FieldError("mixed-field operands");
    }

    static std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
        // Fermat: a^(p-2) mod p.
        std::uint64_t acc = 1, base = a % p, e = p - 2;
        while (e) {
            if (e & 1) acc = (acc * base) % p;
            base = (base * base) % p;
            e >>= 1;
        }
        return acc;
    }

    FieldDescriptor field_;
    mpq_class rat_;
    std::uint64_t res_ = 0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic nonzero scalar for a seed; identical (field, seed) pairs
/// always produce identical output.
inline Scalar sample_nonzero(const FieldDescriptor& f, std::uint64_t seed) {
    std::uint64_t h = splitmix64(seed);
    if (f.kind == FieldKind::Prime)
        return Scalar::of_int(f, static_cast<long>(1 + h % (f.p - 1)));
    long num = static_cast<long>(1 + (h % 23));
    long den = static_cast<long>(1 + ((h >> 24) % 17));
    if ((h >> 60) & 1) num = -num;
    return Scalar::of_fraction(f, num, den);
}

/// Deterministic scalar (possibly zero) for property sweeps and sampling.
inline Scalar sample_scalar(const FieldDescriptor& f, std::uint64_t seed) {
    std::uint64_t h = splitmix64(seed ^ 0x5bd1e995u);
    if (f.kind == FieldKind::Prime)
        return Scalar::of_int(f, static_cast<long>(h % f.p));
    long num = static_cast<long>(h % 41) - 20;
    long den = static_cast<long>(1 + ((h >> 24) % 7));
    return Scalar::of_fraction(f, num, den);
}

}  // namespace bqa
