#include "supercoh/orbit.hpp"

#include <algorithm>
#include <cmath>

namespace supercoh {

// ---------------------------------------------------------------- exact layer

DerCochain actOnCochain(const BundleAut& phi, const DerCochain& c)
{
    if (phi.spec() != c.spec())
        throw Error(ErrorKind::SpecMismatch, phi.spec().str() + " vs " + c.spec().str());
    return conjugate(phi, c);
}

ChannelSummand ChannelSummand::named(const BundleSpec& spec, const std::string& name)
{
    ChannelSummand s;
    s.name = name;
    if (name == "wedge2" || name == "wedge3dual" || name == "der2") {
        s.k = 1;
        for (const DerKey& key : channelsOfDegree(spec, 1))
            if (name == "der2" || key.isVectorField() == (name == "wedge2"))
                s.channels.push_back(key);
    } else if (name == "det" || name == "der4") {
        s.k = 2;
        for (const DerKey& key : channelsOfDegree(spec, 2))
            if (name == "der4" || (key.isVectorField() && key.index.size() == 4))
                s.channels.push_back(key);
    } else {
        throw Error(ErrorKind::ChannelUnknown, name);
    }
    return s;
}

namespace {

std::vector<std::size_t> summandPositions(const BundleSpec& spec, const ChannelSummand& summand)
{
    std::vector<CanonicalMonomial> all = canonicalMonomials(spec, summand.k);
    std::vector<std::size_t> pos;
    for (std::size_t n = 0; n < all.size(); ++n)
        if (std::find(summand.channels.begin(), summand.channels.end(), all[n].key) != summand.channels.end())
            pos.push_back(n);
    return pos;
}

}  // namespace

std::vector<CanonicalMonomial> summandMonomials(const BundleSpec& spec, const ChannelSummand& summand)
{
    std::vector<CanonicalMonomial> all = canonicalMonomials(spec, summand.k), out;
    for (std::size_t n : summandPositions(spec, summand))
        out.push_back(all[n]);
    return out;
}

Matrix inducedMatrix(const BundleAut& phi, const BundleSpec& spec, const ChannelSummand& summand)
{
    if (phi.spec() != spec)
        throw Error(ErrorKind::SpecMismatch, phi.spec().str() + " vs " + spec.str());
    Cover two = Cover::twoChart();
    std::size_t total = canonicalMonomials(spec, summand.k).size();
    std::vector<std::size_t> pos = summandPositions(spec, summand);
    Matrix M(pos.size(), pos.size());
    for (std::size_t col = 0; col < pos.size(); ++col) {
        std::vector<Scalar> unit(total);
        unit[pos[col]] = Scalar(1);
        DerCochain c = singleEntry(two, fromCanonicalCoordinates(spec, summand.k, unit));
        DerCochain moved = canonicalH1(actOnCochain(phi, c)).canonical;
        std::vector<Scalar> coords = canonicalCoordinates(moved.at({0, 1}), summand.k);
        for (std::size_t row = 0; row < pos.size(); ++row)
            M(row, col) = coords[pos[row]];
    }
    return M;
}

Scalar determinant(const std::vector<std::vector<Scalar>>& a)
{
    std::vector<std::vector<Scalar>> m = a;
    std::size_t n = m.size();
    Scalar det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c].isZero())
            ++p;
        if (p == n)
            return Scalar(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        Scalar inv = m[c][c].inverse();
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c].isZero())
                continue;
            Scalar f = m[r][c] * inv;
            for (std::size_t k = c; k < n; ++k)
                m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

std::vector<std::vector<Scalar>> minorMatrix(const std::vector<std::vector<Scalar>>& a, int r)
{
    int n = static_cast<int>(a.size());
    std::vector<MultiIndex> subsets = subsetsOfSize(n, r);
    std::sort(subsets.begin(), subsets.end());
    std::vector<std::vector<Scalar>> out(subsets.size(), std::vector<Scalar>(subsets.size()));
    for (std::size_t i = 0; i < subsets.size(); ++i)
        for (std::size_t j = 0; j < subsets.size(); ++j) {
            std::vector<std::vector<Scalar>> sub;
            for (int row : subsets[i].members()) {
                sub.emplace_back();
                for (int col : subsets[j].members())
                    sub.back().push_back(a[static_cast<std::size_t>(row - 1)][static_cast<std::size_t>(col - 1)]);
            }
            out[i][j] = determinant(sub);
        }
    return out;
}

// ---------------------------------------------------------------- float layer

namespace {

int binom(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    int r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

int factorDim(RepKind kind, int k)
{
    switch (kind) {
    case RepKind::Standard:
    case RepKind::Dual: return k;
    case RepKind::Det: return 1;
    case RepKind::Wedge2: return binom(k, 2);
    case RepKind::Wedge3: return binom(k, 3);
    }
    return 0;
}

const char* kindName(RepKind kind)
{
    switch (kind) {
    case RepKind::Standard: return "rho";
    case RepKind::Dual: return "rho*";
    case RepKind::Det: return "det";
    case RepKind::Wedge2: return "wedge2";
    case RepKind::Wedge3: return "wedge3";
    }
    return "?";
}

CMatrix minors(const CMatrix& U, int r)
{
    int k = static_cast<int>(U.rows());
    std::vector<MultiIndex> subsets = subsetsOfSize(k, r);
    std::sort(subsets.begin(), subsets.end());
    CMatrix out(static_cast<Eigen::Index>(subsets.size()), static_cast<Eigen::Index>(subsets.size()));
    for (std::size_t i = 0; i < subsets.size(); ++i)
        for (std::size_t j = 0; j < subsets.size(); ++j) {
            std::vector<int> rows = subsets[i].members(), cols = subsets[j].members();
            CMatrix sub(r, r);
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b)
                    sub(a, b) = U(rows[static_cast<std::size_t>(a)] - 1, cols[static_cast<std::size_t>(b)] - 1);
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sub.determinant();
        }
    return out;
}

CMatrix factorMatrix(const CMatrix& U, RepKind kind)
{
    switch (kind) {
    case RepKind::Standard: return U;
    case RepKind::Dual: return U.inverse().transpose();
    case RepKind::Det: return CMatrix::Constant(1, 1, U.determinant());
    case RepKind::Wedge2: return minors(U, 2);
    case RepKind::Wedge3: return minors(U, 3);
    }
    return {};
}

CMatrix kron(const CMatrix& a, const CMatrix& b)
{
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

int repDim(const std::vector<int>& groupDims, const std::vector<RepFactor>& rep)
{
    int d = 1;
    for (const RepFactor& f : rep)
        d *= factorDim(f.kind, groupDims.at(static_cast<std::size_t>(f.group)));
    return d;
}

// exp of a skew-Hermitian matrix, exactly unitary up to rounding
CMatrix expSkew(const CMatrix& H)
{
    CMatrix S = std::complex<double>(0, -1) * H;  // Hermitian
    S = (S + S.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(S);
    CVector phases = (std::complex<double>(0, 1) * es.eigenvalues().cast<std::complex<double>>()).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// real coordinates on u(k_1) + ... + u(k_r)
std::vector<CMatrix> tangent(const Eigen::VectorXd& t, const std::vector<int>& groupDims)
{
    std::vector<CMatrix> H;
    Eigen::Index p = 0;
    for (int k : groupDims) {
        CMatrix h = CMatrix::Zero(k, k);
        for (int a = 0; a < k; ++a) {
            h(a, a) = std::complex<double>(0, t(p++));
            for (int b = a + 1; b < k; ++b) {
                double re = t(p++), im = t(p++);
                h(a, b) = std::complex<double>(re, im);
                h(b, a) = std::complex<double>(-re, im);
            }
        }
        H.push_back(h);
    }
    return H;
}

std::vector<CMatrix> step(const std::vector<CMatrix>& g, const Eigen::VectorXd& t, const std::vector<int>& groupDims)
{
    std::vector<CMatrix> H = tangent(t, groupDims), out;
    for (std::size_t i = 0; i < g.size(); ++i)
        out.push_back(expSkew(H[i]) * g[i]);
    return out;
}

Eigen::VectorXd realResidual(const std::vector<CMatrix>& g, const OrbitPoint& x, const OrbitPoint& y)
{
    CVector r = act(g, x).coords - y.coords;
    Eigen::VectorXd out(2 * r.size());
    out << r.real(), r.imag();
    return out;
}

struct Descent {
    std::vector<CMatrix> g;
    double cost;
};

Descent descend(std::vector<CMatrix> g, const OrbitPoint& x, const OrbitPoint& y, double tol)
{
    const std::vector<int>& dims = x.groupDims;
    Eigen::Index params = 0;
    for (int k : dims)
        params += k * k;
    Eigen::VectorXd r = realResidual(g, x, y);
    double cost = r.norm();
    double mu = 1e-3;
    const double h = 1e-6;
    for (int iter = 0; iter < 200 && cost > tol; ++iter) {
        Eigen::MatrixXd J(r.size(), params);
        for (Eigen::Index p = 0; p < params; ++p) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(params);
            e(p) = h;
            J.col(p) = (realResidual(step(g, e, dims), x, y) - realResidual(step(g, -e, dims), x, y)) / (2 * h);
        }
        Eigen::MatrixXd A = J.transpose() * J;
        A.diagonal().array() += mu * (1.0 + A.diagonal().array());
        Eigen::VectorXd delta = A.ldlt().solve(-J.transpose() * r);
        bool improved = false;
        for (double t = 1.0; t > 1e-10; t /= 2) {
            std::vector<CMatrix> cand = step(g, t * delta, dims);
            Eigen::VectorXd rc = realResidual(cand, x, y);
            if (rc.norm() < cost) {
                g = std::move(cand);
                r = rc;
                improved = true;
                break;
            }
        }
        if (!improved)
            break;
        double newCost = r.norm();
        if (newCost > 0.5 * cost)
            mu = std::min(mu * 4, 1e3);
        else
            mu = std::max(mu / 8, 1e-12);
        cost = newCost;
    }
    return {g, cost};
}

}  // namespace

std::string OrbitPoint::descriptor() const
{
    std::string out;
    for (std::size_t s = 0; s < summands.size(); ++s) {
        if (s)
            out += " + ";
        const Summand& sm = summands[s];
        if (!sm.label.empty()) {
            out += sm.label;
        } else {
            for (std::size_t f = 0; f < sm.rep.size(); ++f)
                out += (f ? "(x)" : "") + std::string(kindName(sm.rep[f].kind)) + "_" + std::to_string(sm.rep[f].group + 1);
        }
        out += "^" + std::to_string(sm.tdim);
    }
    return out;
}

int OrbitPoint::summandRows(std::size_t s) const { return repDim(groupDims, summands.at(s).rep); }

std::size_t OrbitPoint::summandOffset(std::size_t s) const
{
    std::size_t off = 0;
    for (std::size_t i = 0; i < s; ++i)
        off += static_cast<std::size_t>(summandRows(i) * summands[i].tdim);
    return off;
}

CMatrix OrbitPoint::block(std::size_t s) const
{
    int rows = summandRows(s);
    return Eigen::Map<const CMatrix>(coords.data() + summandOffset(s), rows, summands.at(s).tdim);
}

std::size_t OrbitPoint::dimension() const { return summandOffset(summands.size()); }

OrbitPoint makePoint(std::vector<int> groupDims, std::vector<Summand> summands)
{
    OrbitPoint p{std::move(groupDims), std::move(summands), {}};
    for (const Summand& s : p.summands)
        for (const RepFactor& f : s.rep)
            if (f.group < 0 || f.group >= static_cast<int>(p.groupDims.size()))
                throw Error(ErrorKind::InvalidArgument, "representation factor on unknown group");
    p.coords = CVector::Zero(static_cast<Eigen::Index>(p.dimension()));
    return p;
}

CMatrix repMatrix(const std::vector<CMatrix>& g, const std::vector<int>& groupDims, const std::vector<RepFactor>& rep)
{
    CMatrix R = CMatrix::Identity(1, 1);
    for (const RepFactor& f : rep) {
        const CMatrix& U = g.at(static_cast<std::size_t>(f.group));
        if (U.rows() != groupDims.at(static_cast<std::size_t>(f.group)))
            throw Error(ErrorKind::InvalidArgument, "group element has the wrong size");
        R = kron(R, factorMatrix(U, f.kind));
    }
    return R;
}

OrbitPoint act(const std::vector<CMatrix>& g, const OrbitPoint& x)
{
    OrbitPoint y = x;
    for (std::size_t s = 0; s < x.summands.size(); ++s) {
        CMatrix moved = repMatrix(g, x.groupDims, x.summands[s].rep) * x.block(s);
        Eigen::Map<CMatrix>(y.coords.data() + x.summandOffset(s), moved.rows(), moved.cols()) = moved;
    }
    return y;
}

CMatrix haarUnitary(std::mt19937_64& rng, int k)
{
    std::normal_distribution<double> n(0.0, 1.0);
    CMatrix Z(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            Z(a, b) = std::complex<double>(n(rng), n(rng));
    Eigen::HouseholderQR<CMatrix> qr(Z);
    CMatrix Q = qr.householderQ();
    CMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int a = 0; a < k; ++a)
        Q.col(a) *= R(a, a) / std::abs(R(a, a));
    return Q;
}

std::vector<CMatrix> haarElement(std::mt19937_64& rng, const std::vector<int>& groupDims)
{
    std::vector<CMatrix> g;
    for (int k : groupDims)
        g.push_back(haarUnitary(rng, k));
    return g;
}

CVector randomCoords(std::mt19937_64& rng, std::size_t n)
{
    std::normal_distribution<double> d(0.0, 1.0);
    CVector v(static_cast<Eigen::Index>(n));
    for (auto& x : v)
        x = std::complex<double>(d(rng), d(rng));
    return v;
}

CMatrix gramInvariant(const OrbitPoint& x, std::size_t summand)
{
    const Summand& s = x.summands.at(summand);
    int vector = 0;
    for (const RepFactor& f : s.rep) {
        if (f.kind == RepKind::Standard || f.kind == RepKind::Dual)
            ++vector;
        else if (f.kind != RepKind::Det)
            throw Error(ErrorKind::WrongActionKind, "summand " + std::to_string(summand) + " is not a standard action");
    }
    if (vector != 1)
        throw Error(ErrorKind::WrongActionKind, "summand " + std::to_string(summand) + " is not a standard action");
    CMatrix M = x.block(summand);
    return M.adjoint() * M;
}

double invariantGap(const OrbitPoint& x, const OrbitPoint& y)
{
    double gap = 0;
    for (std::size_t s = 0; s < x.summands.size(); ++s) {
        CMatrix X = x.block(s), Y = y.block(s);
        double nx = X.size() ? Eigen::JacobiSVD<CMatrix>(X).singularValues()(0) : 0.0;
        double ny = Y.size() ? Eigen::JacobiSVD<CMatrix>(Y).singularValues()(0) : 0.0;
        if (nx + ny == 0)
            continue;
        gap = std::max(gap, (X.adjoint() * X - Y.adjoint() * Y).norm() / (nx + ny));
    }
    return gap;
}

OrbitSearch orbitDistance(const OrbitPoint& x, const OrbitPoint& y, int budget, std::uint64_t seed, double tol)
{
    if (x.descriptor() != y.descriptor() || x.groupDims != y.groupDims)
        throw Error(ErrorKind::InvalidArgument, "orbit points with different actions");
    OrbitSearch out;
    out.lowerBound = invariantGap(x, y);
    out.distance = std::numeric_limits<double>::infinity();
    for (int r = 0; r < std::max(budget, 1); ++r) {
        std::uint64_t s = seed * 1000003ULL + static_cast<std::uint64_t>(r);
        out.restartSeeds.push_back(s);
        std::mt19937_64 rng(s);
        std::vector<CMatrix> g0;
        if (r == 0)
            for (int k : x.groupDims)
                g0.push_back(CMatrix::Identity(k, k));
        else
            g0 = haarElement(rng, x.groupDims);
        Descent d = descend(g0, x, y, tol);
        ++out.restartsUsed;
        if (d.cost < out.distance) {
            out.distance = d.cost;
            out.g = d.g;
        }
        if (out.distance <= tol)
            break;
    }
    out.exhausted = out.distance > tol;
    return out;
}

OrbitCase orbitCase(const BundleSpec& spec)
{
    if (spec.m() != 3)
        throw Error(ErrorKind::HypothesisViolated, "orbit cases need three twists");
    if (!satisfiesHypotheses(spec))
        throw Error(ErrorKind::HypothesisViolated, spec.str() + " violates the inequalities");
    auto n = [&](int i, int j) { return (-spec.twist(i) - spec.twist(j) - 4) + (-spec.twist(i) - spec.twist(j) - 2) + 1; };
    int l1 = spec.twist(1), l2 = spec.twist(2), l3 = spec.twist(3);
    if (l1 == l2 && l2 == l3)
        return {"l1=l2=l3", {{3, n(1, 2)}}, {0}};
    if (l1 == l2)
        return {"l1=l2<l3", {{1, n(1, 2)}, {2, n(1, 3)}}, {0, 1}};
    if (l2 == l3)
        return {"l1<l2=l3", {{2, n(1, 2)}, {1, n(2, 3)}}, {0, 2}};
    return {"l1<l2<l3", {{1, n(1, 2)}, {1, n(1, 3)}, {1, n(2, 3)}}, {0, 1, 2}};
}

OrbitPoint orbitCasePoint(const OrbitCase& c)
{
    std::vector<int> dims;
    std::vector<Summand> summands;
    for (std::size_t i = 0; i < c.factors.size(); ++i) {
        dims.push_back(c.factors[i].k);
        summands.push_back(Summand{{RepFactor{static_cast<int>(i), RepKind::Standard}}, c.factors[i].n + 1,
                                   "V_" + std::to_string(c.factors[i].k) + "^" + std::to_string(c.factors[i].n)});
    }
    return makePoint(dims, summands);
}

OrbitPoint fourfoldPoint(int l)
{
    auto t = [](int n) { return std::max(0, n); };
    return makePoint({4}, {Summand{{{0, RepKind::Wedge2}}, t(-2 * l - 3), "wedge2"},
                           Summand{{{0, RepKind::Wedge3}, {0, RepKind::Dual}}, t(-2 * l - 1), "wedge3(x)rho*"},
                           Summand{{{0, RepKind::Det}}, t(-4 * l - 3), "det"}});
}

OrbitPoint twoCouplesPoint(int l, int lp)
{
    auto t = [](int n) { return std::max(0, n); };
    const RepFactor det1{0, RepKind::Det}, det2{1, RepKind::Det};
    const RepFactor rho1{0, RepKind::Standard}, rho2{1, RepKind::Standard};
    const RepFactor dual1{0, RepKind::Dual}, dual2{1, RepKind::Dual};
    return makePoint({2, 2}, {Summand{{det1}, t(-2 * l - 3), "det1"},
                              Summand{{rho1, rho2}, t(-l - lp - 3), "rho1(x)rho2"},
                              Summand{{det2}, t(-2 * lp - 3), "det2"},
                              Summand{{det1, rho2, dual2}, t(-2 * l - 1), "det1.rho2(x)rho2*"},
                              Summand{{det1, rho2, dual1}, t(-l - lp - 1), "det1.rho2(x)rho1*"},
                              Summand{{det2, rho1, dual2}, t(-l - lp - 1), "det2.rho1(x)rho2*"},
                              Summand{{det2, rho1, dual1}, t(-2 * lp - 1), "det2.rho1(x)rho1*"},
                              Summand{{det1, det2}, t(-2 * l - 2 * lp - 3), "det1.det2"}});
}

}  // namespace supercoh
