#include "chanlink/random.hpp"

#include <cmath>

namespace chanlink {

double Rng::uniform() {
    // 53 uniform bits; identical stream on every platform.
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Complex Rng::complex_normal() {
    const double re = normal(), im = normal();
    return Complex(re, im) / std::sqrt(2.0);
}

Matrix haar_unitary(Index d, Rng& rng) { return haar_isometry(d, d, rng); }

Matrix haar_isometry(Index rows, Index cols, Rng& rng) {
    if (rows < cols || cols < 1) throw ShapeError("haar_isometry: need rows >= cols >= 1");
    Matrix g(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = Matrix(qr.householderQ()).leftCols(cols);
    const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    // Fix the phase ambiguity so the distribution is Haar.
    for (Index j = 0; j < cols; ++j) {
        const Complex rjj = r(j, j);
        const double m = std::abs(rjj);
        if (m > 0.0) q.col(j) *= rjj / m;
    }
    return q;
}

Channel random_channel(std::vector<Leg> in_legs, std::vector<Leg> out_legs, Index env_dim, Rng& rng) {
    if (env_dim < 1) throw ShapeError("random_channel: env_dim must be >= 1");
    const Index din = total_dim(in_legs), dout = total_dim(out_legs);
    const Matrix w = haar_isometry(dout * env_dim, din, rng);
    // choi_{(i,n),(j,m)} = sum_e W_{(i,e),n} conj(W_{(j,e),m})
    Matrix choi = Matrix::Zero(dout * din, dout * din);
    for (Index i = 0; i < dout; ++i)
        for (Index n = 0; n < din; ++n)
            for (Index j = 0; j < dout; ++j)
                for (Index m = 0; m < din; ++m) {
                    Complex s = 0.0;
                    for (Index e = 0; e < env_dim; ++e)
                        s += w(i * env_dim + e, n) * std::conj(w(j * env_dim + e, m));
                    choi(i * din + n, j * din + m) = s;
                }
    return Channel(std::move(in_legs), std::move(out_legs), std::move(choi));
}

Isometry random_isometry(std::vector<Leg> in_legs, std::vector<Leg> out_legs, std::vector<Leg> anc_legs,
                         Rng& rng) {
    const Index rows = total_dim(out_legs) * total_dim(anc_legs);
    const Index cols = total_dim(in_legs);
    return Isometry(std::move(in_legs), std::move(out_legs), std::move(anc_legs),
                    haar_isometry(rows, cols, rng));
}

} // namespace chanlink
