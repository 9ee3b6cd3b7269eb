#include "supercoh/bundle.hpp"

#include "supercoh/error.hpp"

namespace supercoh {

namespace {

using PolyMatrix = std::vector<std::vector<Poly>>;

bool invertConstant(std::vector<std::vector<Scalar>> a, std::vector<std::vector<Scalar>>& inv)
{
    std::size_t n = a.size();
    inv.assign(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i)
        inv[i][i] = Scalar(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].isZero())
            ++piv;
        if (piv == n)
            return false;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Scalar p = a[col][col].inverse();
        for (std::size_t k = 0; k < n; ++k) {
            a[col][k] *= p;
            inv[col][k] *= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].isZero())
                continue;
            Scalar f = a[r][col];
            for (std::size_t k = 0; k < n; ++k) {
                a[r][k] -= f * a[col][k];
                inv[r][k] -= f * inv[col][k];
            }
        }
    }
    return true;
}

PolyMatrix multiply(const PolyMatrix& x, const PolyMatrix& y)
{
    std::size_t m = x.size();
    PolyMatrix p(m, std::vector<Poly>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            if (x[i][k].isZero())
                continue;
            for (std::size_t j = 0; j < m; ++j)
                p[i][j] = p[i][j] + x[i][k] * y[k][j];
        }
    return p;
}

}  // namespace

BundleAut::BundleAut(BundleSpec spec, std::vector<std::vector<Poly>> matrix) : spec_(std::move(spec)), a_(std::move(matrix))
{
    int m = spec_.m();
    if (static_cast<int>(a_.size()) != m)
        throw Error(ErrorKind::SpecMismatch, "matrix size differs from odd rank");
    for (int i = 1; i <= m; ++i) {
        if (static_cast<int>(a_[static_cast<std::size_t>(i - 1)].size()) != m)
            throw Error(ErrorKind::SpecMismatch, "matrix is not square");
        for (int j = 1; j <= m; ++j) {
            const Poly& p = entry(i, j);
            if (!p.isZero() && p.degree() > spec_.twist(i) - spec_.twist(j))
                throw Error(ErrorKind::InvalidArgument, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                            ") exceeds degree bound");
        }
    }
    (void)inverse();
}

BundleAut BundleAut::identity(const BundleSpec& spec)
{
    std::vector<Scalar> ones(static_cast<std::size_t>(spec.m()), Scalar(1));
    return diagonal(spec, ones);
}

BundleAut BundleAut::diagonal(const BundleSpec& spec, const std::vector<Scalar>& lambda)
{
    std::size_t m = static_cast<std::size_t>(spec.m());
    std::vector<std::vector<Poly>> a(m, std::vector<Poly>(m));
    for (std::size_t i = 0; i < m; ++i)
        a[i][i] = Poly::constant(lambda.at(i));
    return BundleAut(spec, std::move(a));
}

BundleAut BundleAut::constant(const BundleSpec& spec, const std::vector<std::vector<Scalar>>& c)
{
    std::size_t m = static_cast<std::size_t>(spec.m());
    std::vector<std::vector<Poly>> a(m, std::vector<Poly>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            a[i][j] = c.at(i).at(j).isZero() ? Poly() : Poly::constant(c[i][j]);
    return BundleAut(spec, std::move(a));
}

SuperSection BundleAut::applyMonomial(MultiIndex I, const PointSet& domain) const
{
    SuperSection r = SuperSection::scalar(spec_, domain, RatFunc(Scalar(1)));
    for (int j : I.members()) {
        SuperSection img(spec_, domain);
        for (int i = 1; i <= spec_.m(); ++i)
            img.addTerm(MultiIndex::single(i), RatFunc(entry(i, j)));
        r = wedge(r, img);
    }
    return r;
}

SuperSection BundleAut::apply(const SuperSection& s) const
{
    if (s.spec() != spec_)
        throw Error(ErrorKind::SpecMismatch, s.spec().str() + " vs " + spec_.str());
    SuperSection r(spec_, s.domain());
    for (const auto& [I, f] : s.terms())
        r += applyMonomial(I, s.domain()).scaled(f);
    return r;
}

BundleAut BundleAut::inverse() const
{
    // A = B (1 + B^{-1} N) with B the equal-twist blocks and N nilpotent.
    std::size_t m = a_.size();
    std::vector<std::vector<Scalar>> b(m, std::vector<Scalar>(m)), binv;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (spec_.twists()[i] == spec_.twists()[j])
                b[i][j] = a_[i][j].coeff(0);
    if (!invertConstant(b, binv))
        throw Error(ErrorKind::InvalidArgument, "bundle map is not invertible");
    PolyMatrix bi(m, std::vector<Poly>(m)), n(m, std::vector<Poly>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            bi[i][j] = Poly::constant(binv[i][j]);
            if (spec_.twists()[i] != spec_.twists()[j])
                n[i][j] = a_[i][j];
        }
    PolyMatrix x = multiply(bi, n);
    for (auto& row : x)
        for (auto& e : row)
            e = -e;
    PolyMatrix sum = bi, term = bi;
    for (std::size_t k = 1; k < m; ++k) {
        term = multiply(x, term);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                sum[i][j] = sum[i][j] + term[i][j];
    }
    BundleAut r;
    r.spec_ = spec_;
    r.a_ = std::move(sum);
    return r;
}

BundleAut BundleAut::compose(const BundleAut& o) const
{
    if (o.spec_ != spec_)
        throw Error(ErrorKind::SpecMismatch, o.spec_.str() + " vs " + spec_.str());
    BundleAut r;
    r.spec_ = spec_;
    r.a_ = multiply(a_, o.a_);
    return r;
}

}  // namespace supercoh
