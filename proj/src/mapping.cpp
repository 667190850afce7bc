// mapping.cpp — Dense occupation-number check of the pseudoparticle algebra

#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "polariton/model.hpp"

namespace polariton {

namespace {

constexpr double kTol = 1e-12;

struct Operators {
    std::vector<MatrixXd> annihilate;  // c_a
    std::vector<int> particles;        // total particle number of each basis state
};

Operators fermion_operators(int levels) {
    const int dim = 1 << levels;
    Operators ops;
    ops.particles.resize(dim);
    for (int s = 0; s < dim; ++s) ops.particles[s] = std::popcount(static_cast<unsigned>(s));
    for (int a = 0; a < levels; ++a) {
        MatrixXd c = MatrixXd::Zero(dim, dim);
        for (int s = 0; s < dim; ++s) {
            if (!(s & (1 << a))) continue;
            // Jordan-Wigner string over the orbitals below a
            const int below = std::popcount(static_cast<unsigned>(s & ((1 << a) - 1)));
            c(s & ~(1 << a), s) = (below % 2 == 0) ? 1.0 : -1.0;
        }
        ops.annihilate.push_back(std::move(c));
    }
    return ops;
}

void enumerate_occupations(int levels, int cutoff, std::vector<int>& current,
                           std::vector<std::vector<int>>& out) {
    if (static_cast<int>(current.size()) == levels) {
        out.push_back(current);
        return;
    }
    int used = 0;
    for (int n : current) used += n;
    for (int n = 0; n + used <= cutoff; ++n) {
        current.push_back(n);
        enumerate_occupations(levels, cutoff, current, out);
        current.pop_back();
    }
}

Operators boson_operators(int levels, int cutoff) {
    std::vector<std::vector<int>> basis;
    std::vector<int> scratch;
    enumerate_occupations(levels, cutoff, scratch, basis);
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < static_cast<int>(basis.size()); ++i) index[basis[i]] = i;

    const int dim = static_cast<int>(basis.size());
    Operators ops;
    ops.particles.resize(dim);
    for (int i = 0; i < dim; ++i) {
        int n = 0;
        for (int x : basis[i]) n += x;
        ops.particles[i] = n;
    }
    for (int a = 0; a < levels; ++a) {
        MatrixXd c = MatrixXd::Zero(dim, dim);
        for (int i = 0; i < dim; ++i) {
            if (basis[i][a] == 0) continue;
            auto lowered = basis[i];
            lowered[a] -= 1;
            c(index.at(lowered), i) = std::sqrt(static_cast<double>(basis[i][a]));
        }
        ops.annihilate.push_back(std::move(c));
    }
    return ops;
}

// Projector onto basis states with particle number in [lo, hi].
MatrixXd sector_projector(const std::vector<int>& particles, int lo, int hi) {
    const auto dim = static_cast<Eigen::Index>(particles.size());
    MatrixXd p = MatrixXd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (particles[i] >= lo && particles[i] <= hi) p(i, i) = 1.0;
    }
    return p;
}

}  // namespace

bool verify_mapping_commutators(int levels, Statistics statistics, int boson_cutoff) {
    if (levels < 1) throw std::invalid_argument("verify_mapping_commutators: levels must be >= 1");
    if (levels > 6) throw std::length_error("verify_mapping_commutators: levels > 6 exceeds dense limits");
    if (statistics == Statistics::boson && (boson_cutoff < 2 || boson_cutoff > 6))
        throw std::length_error("verify_mapping_commutators: boson cutoff must lie in [2, 6]");

    const Operators ops = statistics == Statistics::fermion ? fermion_operators(levels)
                                                            : boson_operators(levels, boson_cutoff);
    const auto dim = ops.annihilate.front().rows();
    const int top = statistics == Statistics::fermion ? levels : boson_cutoff;

    // Canonical (anti)commutation relations, away from the truncated top sector.
    const MatrixXd below_top = sector_projector(ops.particles, 0, top - 1);
    const MatrixXd identity = MatrixXd::Identity(dim, dim);
    for (int a = 0; a < levels; ++a) {
        for (int b = 0; b < levels; ++b) {
            const MatrixXd& ca = ops.annihilate[a];
            const MatrixXd cbd = ops.annihilate[b].transpose();
            MatrixXd rel = statistics == Statistics::fermion ? MatrixXd(ca * cbd + cbd * ca)
                                                             : MatrixXd(ca * cbd - cbd * ca);
            const MatrixXd expected = (a == b ? 1.0 : 0.0) * identity;
            const MatrixXd diff = statistics == Statistics::fermion
                                      ? MatrixXd(rel - expected)
                                      : MatrixXd(below_top * (rel - expected) * below_top);
            if (diff.cwiseAbs().maxCoeff() > kTol) return false;
        }
    }

    std::vector<MatrixXd> bilinear(levels * levels);
    for (int a = 0; a < levels; ++a)
        for (int b = 0; b < levels; ++b)
            bilinear[a * levels + b] = ops.annihilate[a].transpose() * ops.annihilate[b];

    // Single-occupancy sector: c+_a c_b acts as the matrix unit |a><b|.
    Eigen::Index vacuum = -1;
    for (Eigen::Index i = 0; i < dim; ++i)
        if (ops.particles[i] == 0) vacuum = i;
    std::vector<Eigen::Index> single(levels);
    for (int k = 0; k < levels; ++k) {
        const VectorXd created = ops.annihilate[k].transpose().col(vacuum);
        created.cwiseAbs().maxCoeff(&single[k]);
    }
    for (int a = 0; a < levels; ++a) {
        for (int b = 0; b < levels; ++b) {
            const MatrixXd& x = bilinear[a * levels + b];
            for (int i = 0; i < levels; ++i) {
                for (int j = 0; j < levels; ++j) {
                    const double want = (i == a && j == b) ? 1.0 : 0.0;
                    if (std::abs(x(single[i], single[j]) - want) > kTol) return false;
                }
            }
        }
    }

    for (int a = 0; a < levels; ++a) {
        for (int b = 0; b < levels; ++b) {
            for (int g = 0; g < levels; ++g) {
                for (int d = 0; d < levels; ++d) {
                    const MatrixXd& x_ab = bilinear[a * levels + b];
                    const MatrixXd& x_gd = bilinear[g * levels + d];
                    MatrixXd lhs = x_ab * x_gd - x_gd * x_ab;
                    MatrixXd rhs = MatrixXd::Zero(dim, dim);
                    if (b == g) rhs += bilinear[a * levels + d];
                    if (d == a) rhs -= bilinear[g * levels + b];
                    if ((lhs - rhs).cwiseAbs().maxCoeff() > kTol) return false;
                }
            }
        }
    }
    return true;
}

}  // namespace polariton
