#include "randbound/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace randbound {

SeqSpace make_space(int dim, double p) {
    if (dim < 1) throw DomainError("space dimension must be >= 1");
    if (!(p >= 1.0)) throw DomainError("space exponent must be >= 1 or infinity");
    return SeqSpace{dim, p};
}

double dual_exponent(double p) {
    if (is_inf_exponent(p)) return 1.0;
    if (p == 1.0) return kInfExponent;
    return p / (p - 1.0);
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Matrix transpose(const Matrix& m) {
    Matrix t(m.cols, m.rows);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) t.at(c, r) = m.at(r, c);
    return t;
}

Vector mat_vec(const Matrix& m, const Vector& v) {
    if (static_cast<int>(v.size()) != m.cols) throw ShapeError("mat_vec: dimension mismatch");
    Vector out(m.rows, 0.0);
    for (int r = 0; r < m.rows; ++r) {
        double s = 0.0;
        const double* row = m.data.data() + static_cast<size_t>(r) * m.cols;
        for (int c = 0; c < m.cols; ++c) s += row[c] * v[c];
        out[r] = s;
    }
    return out;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw ShapeError("mat_mul: inner dimensions differ");
    Matrix out(a.rows, b.cols);
    for (int r = 0; r < a.rows; ++r)
        for (int k = 0; k < a.cols; ++k) {
            const double av = a.at(r, k);
            if (av == 0.0) continue;
            for (int c = 0; c < b.cols; ++c) out.at(r, c) += av * b.at(k, c);
        }
    return out;
}

void OperatorFamily::validate() const {
    if (members.empty()) throw DomainError("operator family must be nonempty");
    for (const Matrix& m : members) {
        if (m.rows != codomain.dim || m.cols != domain.dim)
            throw ShapeError("family member shape disagrees with declared spaces");
        for (double x : m.data)
            if (!std::isfinite(x)) throw DomainError("family member entries must be finite");
    }
}

void validate_witness(const OperatorFamily& family, const Witness& w) {
    if (w.vectors.empty()) throw DomainError("witness must be nonempty");
    if (w.opIndices.size() != w.vectors.size())
        throw ShapeError("witness index/vector lengths differ");
    for (int idx : w.opIndices)
        if (idx < 0 || idx >= family.size()) throw ShapeError("witness operator index out of range");
    bool anyNonzero = false;
    for (const Vector& v : w.vectors) {
        if (static_cast<int>(v.size()) != family.domain.dim)
            throw ShapeError("witness vector dimension mismatch");
        for (double x : v) {
            if (!std::isfinite(x)) throw DomainError("witness entries must be finite");
            if (x != 0.0) anyNonzero = true;
        }
    }
    if (!anyNonzero) throw DomainError("witness must contain a nonzero vector");
}

double norm(const SeqSpace& space, const Vector& v) {
    if (static_cast<int>(v.size()) != space.dim) throw ShapeError("norm: dimension mismatch");
    if (is_inf_exponent(space.p)) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::fabs(x));
        return m;
    }
    if (space.p == 1.0) {
        double s = 0.0;
        for (double x : v) s += std::fabs(x);
        return s;
    }
    if (space.p == 2.0) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    }
    double s = 0.0;
    for (double x : v) s += std::pow(std::fabs(x), space.p);
    return std::pow(s, 1.0 / space.p);
}

double square_function_norm(const SeqSpace& space, const std::vector<Vector>& vs) {
    if (vs.empty()) throw DomainError("square_function_norm: empty vector list");
    Vector w(space.dim, 0.0);
    for (const Vector& v : vs) {
        if (static_cast<int>(v.size()) != space.dim)
            throw ShapeError("square_function_norm: dimension mismatch");
        for (int m = 0; m < space.dim; ++m) w[m] += v[m] * v[m];
    }
    for (double& x : w) x = std::sqrt(x);
    return norm(space, w);
}

Vector apply(const OperatorFamily& family, int index, const Vector& v) {
    if (index < 0 || index >= family.size()) throw ShapeError("apply: member index out of range");
    if (static_cast<int>(v.size()) != family.domain.dim)
        throw ShapeError("apply: vector not in the domain");
    return mat_vec(family.members[static_cast<size_t>(index)], v);
}

OperatorFamily adjoint_family(const OperatorFamily& family) {
    OperatorFamily out;
    out.domain = dual_space(family.codomain);
    out.codomain = dual_space(family.domain);
    out.members.reserve(family.members.size());
    for (const Matrix& m : family.members) out.members.push_back(transpose(m));
    return out;
}

double exact_operator_norm_or_negative(const SeqSpace& domain, const SeqSpace& codomain,
                                       const Matrix& m) {
    // dim-1 domain: ||T|| = ||T(1)||_codomain regardless of the domain exponent.
    if (domain.dim == 1) {
        Vector col(m.rows);
        for (int r = 0; r < m.rows; ++r) col[r] = m.at(r, 0);
        return norm(codomain, col);
    }
    // codomain q = inf (or a single row): max over rows of the dual-exponent norm.
    if (is_inf_exponent(codomain.p) || codomain.dim == 1) {
        const SeqSpace rowSpace{domain.dim, dual_exponent(domain.p)};
        double best = 0.0;
        for (int r = 0; r < m.rows; ++r) {
            Vector row(m.cols);
            for (int c = 0; c < m.cols; ++c) row[c] = m.at(r, c);
            best = std::max(best, norm(rowSpace, row));
        }
        return best;
    }
    // domain p = 1: max over columns of the codomain norm (extreme points are +-e_n).
    if (domain.p == 1.0) {
        double best = 0.0;
        for (int c = 0; c < m.cols; ++c) {
            Vector col(m.rows);
            for (int r = 0; r < m.rows; ++r) col[r] = m.at(r, c);
            best = std::max(best, norm(codomain, col));
        }
        return best;
    }
    return -1.0;
}

OperatorFamily diagonal_functional_family(const Vector& a) {
    const int n = static_cast<int>(a.size());
    if (n < 1) throw DomainError("diagonal family needs at least one coefficient");
    OperatorFamily fam;
    fam.domain = linf(n);
    fam.codomain = scalar_space();
    fam.members.reserve(a.size());
    for (int i = 0; i < n; ++i) {
        Matrix m(1, n);
        m.at(0, i) = a[static_cast<size_t>(i)];
        fam.members.push_back(std::move(m));
    }
    return fam;
}

OperatorFamily coordinate_functional_family(int n) {
    return diagonal_functional_family(Vector(static_cast<size_t>(n), 1.0));
}

OperatorFamily coordinate_embedding_family(int n) {
    if (n < 1) throw DomainError("embedding family needs n >= 1");
    OperatorFamily fam;
    fam.domain = scalar_space();
    fam.codomain = linf(n);
    for (int i = 0; i < n; ++i) {
        Matrix m(n, 1);
        m.at(i, 0) = 1.0;
        fam.members.push_back(std::move(m));
    }
    return fam;
}

OperatorFamily stack_family(const OperatorFamily& functionals) {
    functionals.validate();
    if (functionals.codomain.dim != 1)
        throw ContractError("stack_family expects scalar-valued members");
    const int n = functionals.size();
    Matrix a(n, functionals.domain.dim);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < functionals.domain.dim; ++c)
            a.at(r, c) = functionals.members[static_cast<size_t>(r)].at(0, c);
    OperatorFamily fam;
    fam.domain = functionals.domain;
    fam.codomain = linf(n);
    fam.members.push_back(std::move(a));
    return fam;
}

bool is_zero_family(const OperatorFamily& family) {
    for (const Matrix& m : family.members)
        for (double x : m.data)
            if (x != 0.0) return false;
    return true;
}

bool detect_diagonal_functionals(const OperatorFamily& family, Vector& a) {
    const int n = family.size();
    if (family.codomain.dim != 1) return false;
    if (!is_inf_exponent(family.domain.p)) return false;
    if (family.domain.dim != n) return false;
    a.assign(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        const Matrix& m = family.members[static_cast<size_t>(i)];
        for (int c = 0; c < n; ++c) {
            if (c != i && m.at(0, c) != 0.0) return false;
        }
        a[static_cast<size_t>(i)] = m.at(0, i);
    }
    return true;
}

bool detect_coordinate_functionals(const OperatorFamily& family) {
    Vector a;
    if (!detect_diagonal_functionals(family, a)) return false;
    return std::all_of(a.begin(), a.end(), [](double x) { return x == 1.0; });
}

} // namespace randbound
