#include "oddconn/gamma.hpp"

#include "oddconn/errors.hpp"

namespace oddconn {

Mat4 mat_mul(const Mat4& a, const Mat4& b) {
    Mat4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Rational acc = 0;
            for (int k = 0; k < 4; ++k)
                acc += a[i][k] * b[k][j];
            out[i][j] = acc;
        }
    return out;
}

Mat4 mat_add(const Mat4& a, const Mat4& b) {
    Mat4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out[i][j] = a[i][j] + b[i][j];
    return out;
}

Mat4 mat_scale(const Rational& c, const Mat4& a) {
    Mat4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out[i][j] = c * a[i][j];
    return out;
}

Mat4 mat_identity() {
    Mat4 out{};
    for (int i = 0; i < 4; ++i)
        out[i][i] = 1;
    return out;
}

bool mat_symmetric(const Mat4& a) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (a[i][j] != a[j][i])
                return false;
    return true;
}

Rational GammaData::c_gamma(std::size_t mu, std::size_t beta, std::size_t alpha) const {
    return mat_mul(C, gamma[mu])[beta][alpha];
}

void GammaData::validate() const {
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            Mat4 anti = mat_add(mat_mul(gamma[mu], gamma[nu]), mat_mul(gamma[nu], gamma[mu]));
            Mat4 want{};
            if (mu == nu)
                want = mat_scale(Rational(2 * eta_diag[mu]), mat_identity());
            if (anti != want)
                throw InputError("GammaData: Clifford relation fails for (mu,nu) = (" +
                                 std::to_string(mu) + "," + std::to_string(nu) + ")");
        }
    for (int mu = 0; mu < 4; ++mu)
        if (!mat_symmetric(mat_mul(C, gamma[mu])))
            throw InputError("GammaData: C gamma^" + std::to_string(mu) + " is not symmetric");
}

namespace {

using Mat2 = std::array<std::array<int, 2>, 2>;

Mat4 tensor2x2(const Mat2& a, const Mat2& b) {
    Mat4 out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
    return out;
}

} // namespace

GammaData build_gamma() {
    const Mat2 one{{{1, 0}, {0, 1}}};
    const Mat2 eps{{{0, 1}, {-1, 0}}};     // squares to -1
    const Mat2 sigma1{{{0, 1}, {1, 0}}};   // squares to +1
    const Mat2 sigma3{{{1, 0}, {0, -1}}};  // squares to +1

    GammaData data;
    data.gamma[0] = tensor2x2(eps, sigma3);
    data.gamma[1] = tensor2x2(sigma1, sigma3);
    data.gamma[2] = tensor2x2(sigma3, sigma3);
    data.gamma[3] = tensor2x2(one, sigma1);
    data.C = data.gamma[0];
    data.validate();
    return data;
}

} // namespace oddconn
