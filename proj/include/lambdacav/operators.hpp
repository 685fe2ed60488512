#pragma once
// Operators on the truncated (three-level atom) x (Fock space) Hilbert space.
//
// The composite basis ordering is fixed once, here, and used everywhere:
//
//   index(atom, n) = atom_index * (n_max + 1) + n
//
// with atom_index in {g -> 0, e -> 1, m -> 2} and n the Fock occupation.
// The atom factor is the slow index, the field factor the fast one, so
// embed(A, F) is the plain Kronecker product kron(A, F).

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lambdacav {

using Complex = std::complex<double>;
using OperatorMatrix = Eigen::MatrixXcd;

enum class AtomLevel : int { g = 0, e = 1, m = 2 };

inline int atom_index(AtomLevel l) { return static_cast<int>(l); }

struct FockTruncation {
    int n_max;

    explicit FockTruncation(int n) : n_max(n) {
        if (n < 1)
            throw std::invalid_argument("FockTruncation: n_max must be >= 1, got " +
                                        std::to_string(n));
    }

    int field_dim() const { return n_max + 1; }
    int composite_dim() const { return 3 * (n_max + 1); }
};

// index(atom, n) in the composite basis
inline int composite_index(AtomLevel atom, int n, FockTruncation trunc) {
    if (n < 0 || n > trunc.n_max)
        throw std::invalid_argument("composite_index: Fock index out of range");
    return atom_index(atom) * trunc.field_dim() + n;
}

inline AtomLevel atom_of_index(int idx, FockTruncation trunc) {
    return static_cast<AtomLevel>(idx / trunc.field_dim());
}

inline int fock_of_index(int idx, FockTruncation trunc) {
    return idx % trunc.field_dim();
}

// Field-space annihilation operator: a[n-1, n] = sqrt(n).
inline OperatorMatrix annihilation(FockTruncation trunc) {
    const int dim = trunc.field_dim();
    OperatorMatrix a = OperatorMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n)
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

// Atomic transition/projection operator sigma_ij = |i><j| on the 3-level atom.
inline OperatorMatrix atomic_sigma(AtomLevel i, AtomLevel j) {
    OperatorMatrix s = OperatorMatrix::Zero(3, 3);
    s(atom_index(i), atom_index(j)) = 1.0;
    return s;
}

// Kronecker product in the fixed ordering (atom slow, field fast).
inline OperatorMatrix embed(const OperatorMatrix& atom_op, const OperatorMatrix& field_op) {
    if (atom_op.rows() != 3 || atom_op.cols() != 3)
        throw std::invalid_argument("embed: atom operator must be 3x3");
    if (field_op.rows() != field_op.cols())
        throw std::invalid_argument("embed: field operator must be square");
    const int fd = static_cast<int>(field_op.rows());
    OperatorMatrix out(3 * fd, 3 * fd);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out.block(i * fd, j * fd, fd, fd) = atom_op(i, j) * field_op;
    return out;
}

// The embedded operators the model is built from, precomputed once per
// truncation. All members live on the composite space.
struct LambdaOperators {
    FockTruncation trunc;
    OperatorMatrix a;         // cavity annihilation
    OperatorMatrix n_photon;  // a^dag a
    OperatorMatrix sigma_ee, sigma_mm;
    OperatorMatrix sigma_eg, sigma_ge;  // |e><g|, |g><e|
    OperatorMatrix sigma_em, sigma_me;  // |e><m|, |m><e|
    OperatorMatrix sigma_gm;            // |g><m|

    explicit LambdaOperators(FockTruncation t)
        : trunc(t),
          a(embed(OperatorMatrix::Identity(3, 3), annihilation(t))),
          n_photon(a.adjoint() * a),
          sigma_ee(embed_atom(AtomLevel::e, AtomLevel::e, t)),
          sigma_mm(embed_atom(AtomLevel::m, AtomLevel::m, t)),
          sigma_eg(embed_atom(AtomLevel::e, AtomLevel::g, t)),
          sigma_ge(embed_atom(AtomLevel::g, AtomLevel::e, t)),
          sigma_em(embed_atom(AtomLevel::e, AtomLevel::m, t)),
          sigma_me(embed_atom(AtomLevel::m, AtomLevel::e, t)),
          sigma_gm(embed_atom(AtomLevel::g, AtomLevel::m, t)) {}

    int dim() const { return trunc.composite_dim(); }

    static OperatorMatrix embed_atom(AtomLevel i, AtomLevel j, FockTruncation t) {
        return embed(atomic_sigma(i, j), OperatorMatrix::Identity(t.field_dim(), t.field_dim()));
    }
};

}  // namespace lambdacav
