#include "algdyn/lattice.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "algdyn/errors.hpp"

namespace algdyn {

Matrix Matrix::identity(int n)
{
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long>>& rows)
{
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    Matrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw InputError("ragged matrix");
        for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::transposed() const
{
    Matrix t(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows()) throw InputError("matrix shape mismatch");
    Matrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (int j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

mpz_class determinant(const Matrix& m)
{
    // Bareiss fraction-free elimination
    int n = m.rows();
    if (n != m.cols()) throw InputError("determinant of a non-square matrix");
    if (n == 0) return 1;
    Matrix a = m;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                mpz_class v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

namespace {

using Column = std::vector<mpz_class>;

int cmpabs(const mpz_class& a, const mpz_class& b)
{
    return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

// floor division
mpz_class fdiv(const mpz_class& a, const mpz_class& b)
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

Matrix hermite_columns(const Matrix& gens)
{
    int d = gens.rows();
    std::vector<Column> active;
    for (int j = 0; j < gens.cols(); ++j) {
        Column c(d);
        for (int i = 0; i < d; ++i) c[i] = gens(i, j);
        active.push_back(std::move(c));
    }
    std::vector<Column> fixed(d);
    for (int i = d - 1; i >= 0; --i) {
        int p = -1;
        for (int j = 0; j < static_cast<int>(active.size()); ++j)
            if (active[j][i] != 0) {
                p = j;
                break;
            }
        if (p < 0) throw InputError("singular lattice basis");
        for (int j = 0; j < static_cast<int>(active.size()); ++j) {
            if (j == p || active[j][i] == 0) continue;
            mpz_class g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), active[p][i].get_mpz_t(),
                       active[j][i].get_mpz_t());
            mpz_class a = active[p][i] / g, b = active[j][i] / g;
            for (int r = 0; r <= i; ++r) {
                mpz_class np = x * active[p][r] + y * active[j][r];
                mpz_class nj = a * active[j][r] - b * active[p][r];
                active[p][r] = np;
                active[j][r] = nj;
            }
        }
        Column piv = active[p];
        if (piv[i] < 0)
            for (auto& x : piv) x = -x;
        fixed[i] = piv;
        active.erase(active.begin() + p);
    }
    Matrix h(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) h(i, j) = fixed[j][i];
    for (int j = 1; j < d; ++j)
        for (int i = j - 1; i >= 0; --i) {
            mpz_class q = fdiv(h(i, j), h(i, i));
            if (q == 0) continue;
            for (int r = 0; r <= i; ++r) h(r, j) -= q * h(r, i);
        }
    return h;
}

SmithForm smith_form(Matrix a, bool transforms)
{
    int n = a.rows(), m = a.cols();
    SmithForm out;
    if (transforms) {
        out.U = Matrix::identity(n);
        out.Uinv = Matrix::identity(n);
        out.V = Matrix::identity(m);
    }
    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        for (int c = 0; c < m; ++c) std::swap(a(i, c), a(j, c));
        if (transforms)
            for (int c = 0; c < n; ++c) {
                std::swap(out.U(i, c), out.U(j, c));
                std::swap(out.Uinv(c, i), out.Uinv(c, j));
            }
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (int r = 0; r < n; ++r) std::swap(a(r, i), a(r, j));
        if (transforms)
            for (int r = 0; r < m; ++r) std::swap(out.V(r, i), out.V(r, j));
    };
    // row_i -= q row_t
    auto row_op = [&](int i, int t, const mpz_class& q, int from) {
        for (int c = from; c < m; ++c)
            if (a(t, c) != 0) a(i, c) -= q * a(t, c);
        if (transforms)
            for (int c = 0; c < n; ++c) {
                out.U(i, c) -= q * out.U(t, c);
                out.Uinv(c, t) += q * out.Uinv(c, i);
            }
    };
    auto col_op = [&](int j, int t, const mpz_class& q, int from) {
        for (int r = from; r < n; ++r)
            if (a(r, t) != 0) a(r, j) -= q * a(r, t);
        if (transforms)
            for (int r = 0; r < m; ++r) out.V(r, j) -= q * out.V(r, t);
    };

    int k = std::min(n, m);
    int t = 0;
    for (; t < k; ++t) {
        // smallest nonzero pivot in the trailing block
        int pi = -1, pj = -1;
        for (int i = t; i < n; ++i)
            for (int j = t; j < m; ++j)
                if (a(i, j) != 0 && (pi < 0 || cmpabs(a(i, j), a(pi, pj)) < 0)) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        for (;;) {
            bool dirty = false;
            for (int i = t + 1; i < n; ++i) {
                if (a(i, t) == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
                row_op(i, t, q, t);
                if (a(i, t) != 0) dirty = true;
            }
            for (int j = t + 1; j < m; ++j) {
                if (a(t, j) == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
                col_op(j, t, q, t);
                if (a(t, j) != 0) dirty = true;
            }
            if (dirty) {
                // move the smallest entry of row t / column t into the pivot
                int bi = t, bj = t;
                for (int i = t + 1; i < n; ++i)
                    if (a(i, t) != 0 && cmpabs(a(i, t), a(bi, bj)) < 0) {
                        bi = i;
                        bj = t;
                    }
                for (int j = t + 1; j < m; ++j)
                    if (a(t, j) != 0 && cmpabs(a(t, j), a(bi, bj)) < 0) {
                        bi = t;
                        bj = j;
                    }
                swap_rows(t, bi);
                swap_cols(t, bj);
                continue;
            }
            if (!transforms) break;
            // divisibility: fold an offending row into row t
            int bad = -1;
            for (int i = t + 1; i < n && bad < 0; ++i)
                for (int j = t + 1; j < m; ++j)
                    if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            row_op(t, bad, -1, t);
        }
        if (a(t, t) < 0) {
            for (int c = t; c < m; ++c) a(t, c) = -a(t, c);
            if (transforms)
                for (int c = 0; c < n; ++c) {
                    out.U(t, c) = -out.U(t, c);
                    out.Uinv(c, t) = -out.Uinv(c, t);
                }
        }
    }
    out.diag.assign(k, 0);
    for (int i = 0; i < t; ++i) out.diag[i] = a(i, i);
    return out;
}

mpq_class Character::phase(const Exponent& m) const
{
    mpq_class s = 0;
    for (std::size_t i = 0; i < angles.size(); ++i) s += angles[i] * static_cast<long>(m[i]);
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    return s - f;
}

Character make_character(std::vector<mpq_class> angles)
{
    Character c;
    c.order = 1;
    for (auto& a : angles) {
        a.canonicalize();
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
        a -= f;
        mpz_lcm(c.order.get_mpz_t(), c.order.get_mpz_t(), a.get_den_mpz_t());
    }
    c.angles = std::move(angles);
    return c;
}

void Lattice::init(Matrix h)
{
    dim_ = h.rows();
    h_ = std::move(h);
    index_ = 1;
    for (int i = 0; i < dim_; ++i) index_ *= h_(i, i);
    SmithForm s = smith_form(h_, true);
    snf_.U = std::move(s.U);
    snf_.V = std::move(s.V);
    snf_.d = std::move(s.diag);
}

Lattice Lattice::from_columns(const Matrix& gens)
{
    if (gens.rows() < 1) throw InputError("empty lattice basis");
    if (gens.rows() == gens.cols() && determinant(gens) == 0) throw InputError("singular lattice basis");
    Lattice L;
    L.init(hermite_columns(gens));
    return L;
}

Lattice Lattice::diagonal(int dim, long n)
{
    return diagonal(std::vector<long>(dim, n));
}

Lattice Lattice::diagonal(const std::vector<long>& n)
{
    int d = static_cast<int>(n.size());
    Matrix m(d, d);
    for (int i = 0; i < d; ++i) {
        if (n[i] <= 0) throw InputError("diagonal entries must be positive");
        m(i, i) = n[i];
    }
    return from_columns(m);
}

Lattice Lattice::gamma_abc(long a, long b, long c)
{
    if (a <= 0 || c <= 0) throw InputError("hnf:a,b,c needs a > 0 and c > 0");
    Matrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 1) = c;
    return from_columns(m);
}

Lattice Lattice::from_generators(int dim, const std::vector<Exponent>& gens)
{
    Matrix m(dim, static_cast<int>(gens.size()));
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (int i = 0; i < dim; ++i) m(i, static_cast<int>(j)) = static_cast<long>(gens[j][i]);
    Lattice L;
    L.init(hermite_columns(m));
    return L;
}

bool Lattice::contains(const Exponent& m) const
{
    std::vector<mpz_class> x(dim_);
    for (int i = 0; i < dim_; ++i) x[i] = static_cast<long>(m[i]);
    for (int i = dim_ - 1; i >= 0; --i) {
        if (!mpz_divisible_p(x[i].get_mpz_t(), h_(i, i).get_mpz_t())) return false;
        mpz_class c = x[i] / h_(i, i);
        for (int r = 0; r <= i; ++r) x[r] -= c * h_(r, i);
    }
    return true;
}

Exponent Lattice::reduce(const Exponent& m) const
{
    std::vector<mpz_class> x(dim_);
    for (int i = 0; i < dim_; ++i) x[i] = static_cast<long>(m[i]);
    for (int i = dim_ - 1; i >= 0; --i) {
        mpz_class q = fdiv(x[i], h_(i, i));
        if (q == 0) continue;
        for (int r = 0; r <= i; ++r) x[r] -= q * h_(r, i);
    }
    Exponent e(dim_);
    for (int i = 0; i < dim_; ++i) e[i] = x[i].get_si();
    return e;
}

std::vector<Exponent> Lattice::fundamental_domain() const
{
    std::vector<Exponent> out;
    if (!index_.fits_slong_p() || index_ > 100000000) throw RegimeError("fundamental domain too large");
    out.reserve(index_.get_ui());
    Exponent x(dim_, 0);
    std::vector<long> n(dim_);
    for (int i = 0; i < dim_; ++i) n[i] = h_(i, i).get_si();
    for (;;) {
        out.push_back(x);
        int i = dim_ - 1;
        while (i >= 0 && ++x[i] == n[i]) x[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

std::vector<mpz_class> Lattice::snf_coords(const Exponent& m) const
{
    std::vector<mpz_class> c(dim_);
    for (int i = 0; i < dim_; ++i) {
        mpz_class s = 0;
        for (int j = 0; j < dim_; ++j) s += snf_.U(i, j) * static_cast<long>(m[j]);
        mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), snf_.d[i].get_mpz_t());
        c[i] = s;
    }
    return c;
}

bool Lattice::is_cube() const
{
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            if ((i == j && h_(i, j) != h_(0, 0)) || (i != j && h_(i, j) != 0)) return false;
    return true;
}

std::string Lattice::to_string() const
{
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < dim_; ++i) {
        if (i) os << ";";
        for (int j = 0; j < dim_; ++j) os << (j ? "," : "") << h_(i, j).get_str();
    }
    os << "]";
    return os.str();
}

std::int64_t gamma_min(const Lattice& L)
{
    int d = L.dim();
    const Matrix& h = L.basis();
    mpz_class R = -1;
    for (int j = 0; j < d; ++j) {
        mpz_class s = 0;
        for (int i = 0; i < d; ++i) s = std::max(s, mpz_class(abs(h(i, j))));
        if (R < 0 || s < R) R = s;
    }
    if (!R.fits_slong_p()) throw RegimeError("lattice too coarse for exhaustive search");
    long r = R.get_si();
    long best = r;
    // enumerate coefficient vectors c with |(H c)_i| <= r by back-substitution
    std::vector<mpz_class> c(d);
    std::function<void(int)> rec = [&](int i) {
        if (i < 0) {
            long norm = 0;
            bool nonzero = false;
            for (int k = 0; k < d; ++k) {
                mpz_class x = 0;
                for (int j = k; j < d; ++j) x += h(k, j) * c[j];
                if (x != 0) nonzero = true;
                norm = std::max(norm, mpz_class(abs(x)).get_si());
            }
            if (nonzero) best = std::min(best, norm);
            return;
        }
        mpz_class partial = 0;
        for (int j = i + 1; j < d; ++j) partial += h(i, j) * c[j];
        // need |h_ii c_i + partial| <= r
        mpz_class lo, hi;
        mpz_class a = -r - partial, b = r - partial;
        mpz_cdiv_q(lo.get_mpz_t(), a.get_mpz_t(), h(i, i).get_mpz_t());
        mpz_fdiv_q(hi.get_mpz_t(), b.get_mpz_t(), h(i, i).get_mpz_t());
        for (mpz_class v = lo; v <= hi; ++v) {
            c[i] = v;
            rec(i - 1);
        }
    };
    rec(d - 1);
    return best;
}

CharacterSpace::CharacterSpace(const Lattice& L) : dim_(L.dim())
{
    const auto& snf = L.snf();
    if (!L.index().fits_ulong_p()) throw RegimeError("lattice index too large");
    size_ = L.index().get_ui();
    const mpz_class& E = snf.d.back();
    if (!E.fits_slong_p() || E > (mpz_class(1) << 40)) throw RegimeError("character exponent too large");
    e_ = E.get_si();
    for (int i = 0; i < dim_; ++i) {
        mod_.push_back(snf.d[i].get_si());
        std::vector<std::int64_t> step(dim_);
        mpz_class scale = E / snf.d[i];
        for (int j = 0; j < dim_; ++j) {
            mpz_class v = scale * snf.U(i, j);
            mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), E.get_mpz_t());
            step[j] = v.get_si();
        }
        steps_.push_back(std::move(step));
    }
}

std::vector<std::int64_t> CharacterSpace::coords(std::uint64_t idx) const
{
    std::vector<std::int64_t> k(dim_);
    for (int i = dim_ - 1; i >= 0; --i) {
        k[i] = static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(mod_[i]));
        idx /= static_cast<std::uint64_t>(mod_[i]);
    }
    return k;
}

std::vector<std::int64_t> CharacterSpace::numerators(const std::vector<std::int64_t>& k) const
{
    std::vector<std::int64_t> a(dim_, 0);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            a[j] = static_cast<std::int64_t>((static_cast<__int128>(k[i]) * steps_[i][j] + a[j]) % e_);
    return a;
}

Character CharacterSpace::at(std::uint64_t i) const
{
    auto a = numerators(coords(i));
    std::vector<mpq_class> ang(dim_);
    for (int j = 0; j < dim_; ++j) ang[j] = mpq_class(static_cast<long>(a[j]), static_cast<long>(e_));
    return make_character(std::move(ang));
}

std::vector<Character> CharacterSpace::all() const
{
    std::vector<Character> out;
    out.reserve(size_);
    for (std::uint64_t i = 0; i < size_; ++i) out.push_back(at(i));
    return out;
}

namespace {

std::vector<long> parse_ints(const std::string& s)
{
    std::vector<long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            long v = std::stol(item, &used);
            if (used != item.size()) throw InputError("bad integer '" + item + "' in lattice spec");
            out.push_back(v);
        } catch (const std::logic_error&) {
            throw InputError("bad integer '" + item + "' in lattice spec");
        }
    }
    return out;
}

}  // namespace

Lattice parse_lattice(const std::string& spec, int dim)
{
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw InputError("lattice spec needs a kind prefix");
    std::string kind = spec.substr(0, colon), body = spec.substr(colon + 1);
    if (kind == "diag") {
        auto v = parse_ints(body);
        if (v.size() == 1) return Lattice::diagonal(dim, v[0]);
        if (static_cast<int>(v.size()) != dim) throw InputError("diag entries do not match the dimension");
        return Lattice::diagonal(v);
    }
    if (kind == "hnf") {
        if (dim != 2) throw InputError("hnf:a,b,c is a two-dimensional lattice");
        auto v = parse_ints(body);
        if (v.size() != 3) throw InputError("hnf:a,b,c needs three integers");
        return Lattice::gamma_abc(v[0], v[1], v[2]);
    }
    if (kind == "cols") {
        std::vector<std::vector<long>> cols;
        std::stringstream ss(body);
        std::string col;
        while (std::getline(ss, col, ';')) cols.push_back(parse_ints(col));
        if (static_cast<int>(cols.size()) != dim) throw InputError("cols: needs d columns");
        Matrix m(dim, dim);
        for (int j = 0; j < dim; ++j) {
            if (static_cast<int>(cols[j].size()) != dim) throw InputError("cols: column length mismatch");
            for (int i = 0; i < dim; ++i) m(i, j) = cols[j][i];
        }
        return Lattice::from_columns(m);
    }
    throw InputError("unknown lattice kind '" + kind + "'");
}

}  // namespace algdyn
