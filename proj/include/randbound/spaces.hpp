#pragma once

#include <limits>
#include <vector>

#include "randbound/errors.hpp"

namespace randbound {

/// Exponent value representing p = infinity. Kept as a distinct sentinel;
/// comparisons go through is_inf() so p is never "a large float" by accident.
inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

inline bool is_inf_exponent(double p) { return p == kInfExponent; }

/// A finite-dimensional sequence space l^p_dim.
struct SeqSpace {
    int dim = 1;
    double p = kInfExponent; // in [1, inf) or kInfExponent

    bool operator==(const SeqSpace&) const = default;
};

SeqSpace make_space(int dim, double p);
inline SeqSpace linf(int dim) { return make_space(dim, kInfExponent); }
inline SeqSpace l1(int dim) { return make_space(dim, 1.0); }
inline SeqSpace l2(int dim) { return make_space(dim, 2.0); }
/// The scalar field as a 1-dimensional space (self-dual exponent).
inline SeqSpace scalar_space() { return make_space(1, 2.0); }

/// Dual exponent: inf <-> 1, otherwise p/(p-1).
double dual_exponent(double p);
inline SeqSpace dual_space(const SeqSpace& s) { return SeqSpace{s.dim, dual_exponent(s.p)}; }

using Vector = std::vector<double>;

/// Dense row-major matrix. Desk-scale dims; no sparse storage.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data; // rows*cols, row-major

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {}

    double& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
    double at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }

    static Matrix identity(int n);
    static Matrix zero(int r, int c) { return Matrix(r, c); }

    bool operator==(const Matrix&) const = default;
};

Matrix transpose(const Matrix& m);
Vector mat_vec(const Matrix& m, const Vector& v);
Matrix mat_mul(const Matrix& a, const Matrix& b);

/// A finite list of operators sharing one domain and one codomain.
struct OperatorFamily {
    SeqSpace domain;
    SeqSpace codomain;
    std::vector<Matrix> members;

    int size() const { return static_cast<int>(members.size()); }
    /// Throws ShapeError/DomainError when the member list is empty or shapes disagree.
    void validate() const;
};

/// An assignment (operator indices, input vectors) certifying a lower bound.
struct Witness {
    std::vector<int> opIndices;
    std::vector<Vector> vectors;

    int size() const { return static_cast<int>(vectors.size()); }
};

void validate_witness(const OperatorFamily& family, const Witness& w);

// --- spaces-core operations ---

/// lp norm of v in the given space; max|v_i| when p = inf.
double norm(const SeqSpace& space, const Vector& v);

/// ||(sum_n v_n^2)^{1/2}||: coordinatewise square sum, then the space norm.
double square_function_norm(const SeqSpace& space, const std::vector<Vector>& vs);

/// Matrix action of member `index` on v.
Vector apply(const OperatorFamily& family, int index, const Vector& v);

/// Transposed members on the dual spaces; an involution.
OperatorFamily adjoint_family(const OperatorFamily& family);

/// Exact operator norm when a closed form exists for the space pair:
/// dim-1 domain, codomain with q = inf (or dim 1), or domain with p = 1.
/// Returns a negative value when no closed form applies.
double exact_operator_norm_or_negative(const SeqSpace& domain, const SeqSpace& codomain,
                                       const Matrix& m);

// --- family builders used across the engines and the CLI ---

/// The diagonal functional family on linf_N: member n maps x to a_n * x_n.
OperatorFamily diagonal_functional_family(const Vector& a);

/// Coordinate functionals T_n x = x_n on linf_N (diagonal family with a = ones).
OperatorFamily coordinate_functional_family(int n);

/// Coordinate embeddings T_n a = a * e_n from the scalars into linf_N.
OperatorFamily coordinate_embedding_family(int n);

/// Single-member family holding the stacked operator A x = (T_n x)_n on linf_N.
OperatorFamily stack_family(const OperatorFamily& functionals);

// --- structural detection for registered analytic bounds ---

bool is_zero_family(const OperatorFamily& family);

/// Detects the diagonal-functional shape (codomain dim 1, domain linf_N with
/// N members, member n supported on coordinate n); returns the coefficient
/// vector through `a` on success.
bool detect_diagonal_functionals(const OperatorFamily& family, Vector& a);

/// Exact coordinate-functional shape: diagonal with every coefficient == 1.
bool detect_coordinate_functionals(const OperatorFamily& family);

} // namespace randbound
