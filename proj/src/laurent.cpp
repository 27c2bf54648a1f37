#include "algdyn/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>

#include "algdyn/errors.hpp"

namespace algdyn {

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw InputError("exponent overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw InputError("exponent overflow");
    return r;
}

LaurentPoly::LaurentPoly(int dim) : dim_(dim)
{
    if (dim < 1) throw InputError("dimension must be positive");
}

LaurentPoly LaurentPoly::constant(int dim, const mpz_class& c)
{
    LaurentPoly p(dim);
    p.add_term(Exponent(dim, 0), c);
    return p;
}

LaurentPoly LaurentPoly::monomial(const Exponent& e, const mpz_class& c)
{
    LaurentPoly p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
}

LaurentPoly LaurentPoly::variable(int dim, int k)
{
    if (k < 1 || k > dim) throw InputError("variable index out of range");
    Exponent e(dim, 0);
    e[k - 1] = 1;
    return monomial(e);
}

mpz_class LaurentPoly::coeff(const Exponent& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? mpz_class(0) : it->second;
}

void LaurentPoly::add_term(const Exponent& e, const mpz_class& c)
{
    if (static_cast<int>(e.size()) != dim_) throw InputError("dimension mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Exponent LaurentPoly::min_exponent() const
{
    Exponent m(dim_, 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
        for (int i = 0; i < dim_; ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
        first = false;
    }
    return m;
}

Exponent LaurentPoly::max_exponent() const
{
    Exponent m(dim_, 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
        for (int i = 0; i < dim_; ++i) m[i] = first ? e[i] : std::max(m[i], e[i]);
        first = false;
    }
    return m;
}

std::int64_t LaurentPoly::support_radius() const
{
    std::int64_t r = 0;
    for (const auto& [e, c] : terms_)
        for (auto x : e) r = std::max(r, x < 0 ? -x : x);
    return r;
}

LaurentPoly LaurentPoly::shifted(const Exponent& m) const
{
    if (static_cast<int>(m.size()) != dim_) throw InputError("dimension mismatch");
    LaurentPoly p(dim_);
    for (const auto& [e, c] : terms_) {
        Exponent s(dim_);
        for (int i = 0; i < dim_; ++i) s[i] = checked_add(e[i], m[i]);
        p.terms_.emplace(std::move(s), c);
    }
    return p;
}

LaurentPoly LaurentPoly::operator-() const
{
    LaurentPoly p(*this);
    for (auto& [e, c] : p.terms_) c = -c;
    return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o)
{
    if (o.dim_ != dim_) throw InputError("dimension mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o)
{
    if (o.dim_ != dim_) throw InputError("dimension mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

namespace {

std::string var_name(int dim, int i)
{
    if (dim <= 3) return std::string(1, "uvw"[i]);
    return "u" + std::to_string(i + 1);
}

}  // namespace

std::string LaurentPoly::to_string() const
{
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        mpz_class a = abs(c);
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        std::string mono;
        for (int i = 0; i < dim_; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += var_name(dim_, i);
            if (e[i] != 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            out += a.get_str();
        } else if (a == 1) {
            out += mono;
        } else {
            out += a.get_str() + "*" + mono;
        }
    }
    return out;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b)
{
    LaurentPoly r(a);
    r += b;
    return r;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b)
{
    LaurentPoly r(a);
    r -= b;
    return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
{
    if (a.dim() != b.dim()) throw InputError("dimension mismatch");
    int d = a.dim();
    LaurentPoly r(d);
    Exponent e(d);
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) {
            for (int i = 0; i < d; ++i) e[i] = checked_add(ea[i], eb[i]);
            r.add_term(e, ca * cb);
        }
    return r;
}

LaurentPoly pow(const LaurentPoly& a, std::uint64_t k)
{
    LaurentPoly result = LaurentPoly::constant(a.dim(), 1);
    LaurentPoly base = a;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

LaurentPoly pow_signed(const LaurentPoly& a, std::int64_t k)
{
    if (k >= 0) return pow(a, static_cast<std::uint64_t>(k));
    if (!a.is_monomial() || abs(a.terms().begin()->second) != 1)
        throw InputError("negative power of a non-unit");
    const auto& [e, c] = *a.terms().begin();
    Exponent r(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) r[i] = checked_mul(e[i], k);
    mpz_class s = (c < 0 && (k % 2 != 0)) ? -1 : 1;
    return LaurentPoly::monomial(r, s);
}

LaurentPoly adjoint(const LaurentPoly& f)
{
    LaurentPoly r(f.dim());
    for (const auto& [e, c] : f.terms()) {
        Exponent n(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) n[i] = checked_mul(e[i], -1);
        r.add_term(n, c);
    }
    return r;
}

mpz_class one_norm(const LaurentPoly& f)
{
    mpz_class s = 0;
    for (const auto& [e, c] : f.terms()) s += abs(c);
    return s;
}

Complex eval(const LaurentPoly& f, const std::vector<Complex>& z)
{
    int d = f.dim();
    if (static_cast<int>(z.size()) != d) throw InputError("dimension mismatch");
    long prec = kDefaultPrecision;
    for (const auto& x : z) prec = std::max(prec, x.prec());
    std::vector<std::map<std::int64_t, Complex>> powers(d);
    for (const auto& [e, c] : f.terms())
        for (int i = 0; i < d; ++i) {
            if (e[i] < 0 && z[i].contains_zero()) throw InputError("zero coordinate");
            if (!powers[i].count(e[i])) powers[i].emplace(e[i], pow(z[i], e[i]));
        }
    Complex acc(prec);
    for (const auto& [e, c] : f.terms()) {
        Complex t = Complex::exact(c, 0, prec);
        for (int i = 0; i < d; ++i)
            if (e[i] != 0) t = t * powers[i].at(e[i]);
        acc = acc + t;
    }
    return acc;
}

namespace {

class Parser {
public:
    Parser(std::string_view s, int dim) : s_(s), dim_(dim) {}

    LaurentPoly parse()
    {
        skip();
        if (pos_ >= s_.size()) throw ParseError("empty input", pos_);
        LaurentPoly p = expr();
        skip();
        if (pos_ < s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return p;
    }

    int max_var = 0;

private:
    std::string_view s_;
    int dim_;
    std::size_t pos_ = 0;

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek()
    {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool starts_factor(char c)
    {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 'u' ||
               (dim_ <= 3 && (c == 'v' || c == 'w'));
    }

    LaurentPoly expr()
    {
        LaurentPoly acc = term();
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc += term();
            } else if (c == '-') {
                ++pos_;
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    LaurentPoly term()
    {
        // leading sign: "-u", "+3"
        char c = peek();
        if (c == '-' || c == '+') {
            bool int_literal = c == '-' && pos_ + 1 < s_.size() &&
                               std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]));
            if (!int_literal) {
                ++pos_;
                LaurentPoly t = term();
                return c == '-' ? -t : t;
            }
        }
        LaurentPoly acc = factor();
        for (;;) {
            char n = peek();
            if (n == '*') {
                ++pos_;
                char m = peek();
                if (m == '-' || m == '+') {
                    ++pos_;
                    LaurentPoly f = factor_signed();
                    acc = acc * (m == '-' ? -f : f);
                } else {
                    acc = acc * factor();
                }
            } else if (starts_factor(n)) {
                acc = acc * factor();
            } else {
                return acc;
            }
        }
    }

    LaurentPoly factor_signed()
    {
        char c = peek();
        if (c == '-' || c == '+') {
            ++pos_;
            LaurentPoly f = factor_signed();
            return c == '-' ? -f : f;
        }
        return factor();
    }

    LaurentPoly factor()
    {
        std::size_t start = (skip(), pos_);
        LaurentPoly b = base();
        if (peek() == '^') {
            ++pos_;
            std::size_t epos = (skip(), pos_);
            mpz_class k = integer();
            if (!k.fits_slong_p()) throw ParseError("exponent overflow", epos);
            long kk = k.get_si();
            if (kk < 0) {
                if (!b.is_monomial() || abs(b.terms().begin()->second) != 1)
                    throw ParseError("negative exponent on a non-monomial base", start);
            }
            try {
                return pow_signed(b, kk);
            } catch (const InputError& e) {
                throw ParseError(e.what(), epos);
            }
        }
        return b;
    }

    mpz_class integer()
    {
        skip();
        std::size_t start = pos_;
        bool neg = false;
        if (pos_ < s_.size() && s_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        std::size_t d0 = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == d0) throw ParseError("expected integer", start);
        mpz_class v(std::string(s_.substr(d0, pos_ - d0)), 10);
        return neg ? mpz_class(-v) : v;
    }

    LaurentPoly base()
    {
        char c = peek();
        std::size_t start = pos_;
        if (c == '(') {
            ++pos_;
            LaurentPoly e = expr();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
            return LaurentPoly::constant(dim_, integer());
        }
        if (c == 'u' || c == 'v' || c == 'w') {
            ++pos_;
            int idx = 0;
            if (c == 'u' && pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                if (s_[pos_] == '0') throw ParseError("variable index must start with 1-9", pos_);
                std::size_t d0 = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                std::string digits(s_.substr(d0, pos_ - d0));
                if (digits.size() > 9) throw ParseError("variable index out of range", start);
                idx = std::stoi(digits);
            } else {
                if (dim_ > 3) throw ParseError("variable aliases need dimension <= 3", start);
                idx = c == 'u' ? 1 : (c == 'v' ? 2 : 3);
            }
            max_var = std::max(max_var, idx);
            if (idx > dim_) throw ParseError("variable out of range", start);
            return LaurentPoly::variable(dim_, idx);
        }
        if (c == '\0') throw ParseError("unexpected end of input", pos_);
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }
};

}  // namespace

LaurentPoly parse_poly(std::string_view text, int dim)
{
    if (dim < 1) throw InputError("dimension must be positive");
    Parser p(text, dim);
    return p.parse();
}

int max_variable_index(std::string_view text)
{
    int best = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == 'v') best = std::max(best, 2);
        if (c == 'w') best = std::max(best, 3);
        if (c == 'u') {
            std::size_t j = i + 1;
            int idx = 0;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])) && idx < 100000000) {
                idx = idx * 10 + (text[j] - '0');
                ++j;
            }
            best = std::max(best, j == i + 1 ? 1 : idx);
        }
    }
    return best;
}

}  // namespace algdyn
