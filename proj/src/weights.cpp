#include "fracneum/weights.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "fracneum/errors.hpp"
#include "fracneum/io.hpp"
#include "fracneum/quadrature.hpp"

namespace fracneum {

KernelWeights::KernelWeights(const DomainMesh& mesh, double alpha, std::vector<double> pair,
                             std::vector<double> tail_left, std::vector<double> tail_right)
    : n_(mesh.size()),
      alpha_(alpha),
      mesh_id_(mesh.id()),
      pair_(std::move(pair)),
      tail_left_(std::move(tail_left)),
      tail_right_(std::move(tail_right)),
      coupling_(pair_) {
    if (pair_.size() != n_ * n_ || tail_left_.size() != n_ || tail_right_.size() != n_)
        throw ParameterError("weights", "array sizes do not match the mesh");
    const std::size_t first = 0;
    const std::size_t last = n_ - 1;
    for (std::size_t k = mesh.first_interior(); k < mesh.end_interior(); ++k) {
        coupling_[k * n_ + first] += tail_left_[k];
        coupling_[first * n_ + k] += tail_left_[k];
        coupling_[k * n_ + last] += tail_right_[k];
        coupling_[last * n_ + k] += tail_right_[k];
    }
    for (double w : coupling_)
        if (!std::isfinite(w) || w < 0.0) throw DomainError("weights: non-finite or negative weight");
}

double KernelWeights::tail_fraction() const {
    double tails = 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k < n_; ++k) tails += tail_left_[k] + tail_right_[k];
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j) total += coupling_[i * n_ + j];
    return total > 0.0 ? tails / total : 0.0;
}

namespace {

void check_exponents(double p, double s) {
    if (!(p > 1.0) || !std::isfinite(p)) throw ParameterError("p", "must be finite and > 1");
    if (!(s > 0.0 && s < 1.0)) throw ParameterError("s", "must lie in (0, 1)");
}

void fill_row(const DomainMesh& mesh, double alpha, std::size_t i, std::vector<double>& pair) {
    const std::size_t n = mesh.size();
    for (std::size_t j = i + 1; j < n; ++j) {
        if (!mesh.is_interior(i) && !mesh.is_interior(j)) continue;  // Q excludes exterior x exterior
        const double w = assembly_weight(mesh.cell(i), mesh.cell(j), alpha);
        pair[i * n + j] = w;
        pair[j * n + i] = w;
    }
}

KernelWeights finish(const DomainMesh& mesh, double alpha, std::vector<double> pair) {
    const std::size_t n = mesh.size();
    std::vector<double> left(n, 0.0), right(n, 0.0);
    const double cut_left = mesh.cells().front().lo;
    const double cut_right = mesh.cells().back().hi;
    for (std::size_t k = mesh.first_interior(); k < mesh.end_interior(); ++k) {
        left[k] = tail_weight(mesh.cell(k), cut_left, Side::Left, alpha);
        right[k] = tail_weight(mesh.cell(k), cut_right, Side::Right, alpha);
    }
    return KernelWeights(mesh, alpha, std::move(pair), std::move(left), std::move(right));
}

}  // namespace

KernelWeights assemble_weights(const DomainMesh& mesh, double p, double s) {
    check_exponents(p, s);
    const double alpha = 1.0 + p * s;
    const std::size_t n = mesh.size();
    std::vector<double> pair(n * n, 0.0);
    const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < rows; ++i) fill_row(mesh, alpha, static_cast<std::size_t>(i), pair);
    return finish(mesh, alpha, std::move(pair));
}

namespace serial {

KernelWeights assemble_weights(const DomainMesh& mesh, double p, double s) {
    check_exponents(p, s);
    const double alpha = 1.0 + p * s;
    const std::size_t n = mesh.size();
    std::vector<double> pair(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) fill_row(mesh, alpha, i, pair);
    return finish(mesh, alpha, std::move(pair));
}

}  // namespace serial

void write_mesh(std::ostream& os, const DomainMesh& mesh, const KernelWeights& weights) {
    const std::size_t n = mesh.size();
    std::size_t n_pairs = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (weights.coupling(i, j) != 0.0) ++n_pairs;
    os << "fracneum-mesh omega_lo=" << format_double(mesh.omega_lo()) << " omega_hi=" << format_double(mesh.omega_hi())
       << " R=" << format_double(mesh.collar_radius()) << " alpha=" << format_double(weights.alpha())
       << " cells=" << n << " interior_first=" << mesh.first_interior() << " interior_count=" << mesh.n_interior()
       << " pairs=" << n_pairs << '\n';
    for (std::size_t k = 0; k < n; ++k)
        os << "cell " << k << ' ' << (mesh.is_interior(k) ? "INTERIOR" : "EXTERIOR") << ' '
           << format_double(mesh.cell(k).lo) << ' ' << format_double(mesh.cell(k).hi) << '\n';
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (weights.coupling(i, j) != 0.0) os << i << ' ' << j << ' ' << format_double(weights.coupling(i, j)) << '\n';
}

MeshFile read_mesh(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw InputError("mesh file: empty");
    std::istringstream header(line);
    std::string magic;
    header >> magic;
    if (magic != "fracneum-mesh") throw InputError("mesh file: missing 'fracneum-mesh' header");
    double lo = 0, hi = 0, radius = 0, alpha = 0;
    std::size_t n = 0, first = 0, count = 0, n_pairs = 0;
    std::string token;
    while (header >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) throw InputError("mesh file: malformed header token '" + token + "'");
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "omega_lo") lo = parse_double(value, key);
        else if (key == "omega_hi") hi = parse_double(value, key);
        else if (key == "R") radius = parse_double(value, key);
        else if (key == "alpha") alpha = parse_double(value, key);
        else if (key == "cells") n = std::stoul(value);
        else if (key == "interior_first") first = std::stoul(value);
        else if (key == "interior_count") count = std::stoul(value);
        else if (key == "pairs") n_pairs = std::stoul(value);
        else throw InputError("mesh file: unknown header key '" + key + "'");
    }
    std::vector<Interval> cells(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::string kw, tag, slo, shi;
        std::size_t idx = 0;
        if (!(is >> kw >> idx >> tag >> slo >> shi) || kw != "cell" || idx != k)
            throw InputError("mesh file: bad cell record " + std::to_string(k));
        cells[k] = {parse_double(slo, "cell.lo"), parse_double(shi, "cell.hi")};
    }
    DomainMesh mesh(lo, hi, radius, std::move(cells), first, count);
    std::vector<double> coupling(n * n, 0.0);
    for (std::size_t r = 0; r < n_pairs; ++r) {
        std::size_t i = 0, j = 0;
        std::string sw;
        if (!(is >> i >> j >> sw) || i >= j || j >= n) throw InputError("mesh file: bad pair record " + std::to_string(r));
        coupling[i * n + j] = coupling[j * n + i] = parse_double(sw, "pair.w");
    }
    return MeshFile{std::move(mesh), alpha, std::move(coupling)};
}

}  // namespace fracneum
