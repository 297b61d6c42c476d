#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "patchbound/errors.hpp"
#include "patchbound/mesh.hpp"
#include "patchbound/patch_stats.hpp"

using namespace patchbound;

namespace {

GradingParams params(GradingFamily family, int n, double eps = 0.05, double beta = 3.0) {
  GradingParams p;
  p.family = family;
  p.n = n;
  p.eps = eps;
  p.beta = beta;
  return p;
}

// All-pairs reference for H and per-vertex recomputation of patch volumes.
struct BruteForce {
  double h = 1;
  Eigen::VectorXd omega;
};

BruteForce brute_force(const SimplicialMesh& mesh) {
  BruteForce out;
  const auto& cells = mesh.cells();
  const auto& vol = mesh.cell_volumes();
  const int d = mesh.dim();
  for (Eigen::Index a = 0; a < mesh.n_cells(); ++a) {
    for (Eigen::Index b = a + 1; b < mesh.n_cells(); ++b) {
      bool share = false;
      for (int i = 0; i <= d && !share; ++i)
        for (int j = 0; j <= d && !share; ++j) share = cells(i, a) == cells(j, b);
      if (share) out.h = std::max(out.h, std::max(vol[a] / vol[b], vol[b] / vol[a]));
    }
  }
  out.omega = Eigen::VectorXd::Zero(mesh.n_free());
  for (Eigen::Index v = 0; v < mesh.n_vertices(); ++v) {
    const int row = mesh.free_index()[static_cast<std::size_t>(v)];
    if (row < 0) continue;
    for (Eigen::Index c = 0; c < mesh.n_cells(); ++c) {
      for (int k = 0; k <= d; ++k) {
        if (cells(k, c) == v) out.omega[row] += vol[c];
      }
    }
  }
  return out;
}

std::vector<SimplicialMesh> fixture_meshes() {
  std::vector<SimplicialMesh> meshes;
  meshes.push_back(build_mesh(2, params(GradingFamily::Uniform, 6)));
  meshes.push_back(build_mesh(2, params(GradingFamily::Shishkin, 8)));
  meshes.push_back(build_mesh(2, params(GradingFamily::BakhvalovType, 8, 0.1)));
  meshes.push_back(build_mesh(2, params(GradingFamily::PowerGraded, 6, 0.1, 3.0)));
  meshes.push_back(build_mesh(2, params(GradingFamily::SingleLayer, 6, 0.2)));
  auto internal = params(GradingFamily::Shishkin, 8);
  internal.layer_position = LayerPosition::Internal;
  meshes.push_back(build_mesh(2, internal));
  meshes.push_back(build_mesh(3, params(GradingFamily::Uniform, 2)));
  meshes.push_back(build_mesh(3, params(GradingFamily::PowerGraded, 2, 0.1, 2.0)));
  meshes.push_back(build_mesh(3, params(GradingFamily::SingleLayer, 2, 0.3)));
  return meshes;
}

}  // namespace

TEST_CASE("2D tensor mesh counts") {
  const auto mesh = tensor_mesh_2d(uniform_nodes(2), uniform_nodes(2));
  CHECK(mesh.n_vertices() == 9);
  CHECK(mesh.n_cells() == 8);
  CHECK(mesh.n_free() == 1);
  CHECK(std::count(mesh.boundary_mask().begin(), mesh.boundary_mask().end(), true) == 8);
  CHECK(mesh.cell_volumes().sum() == doctest::Approx(1.0).epsilon(1e-12));

  const auto graded = build_mesh(2, params(GradingFamily::BakhvalovType, 10, 0.07));
  CHECK(graded.n_cells() == 2 * 10 * 10);
}

TEST_CASE("interior vertex of a uniform 2D grid lies in 6 triangles") {
  const auto mesh = tensor_mesh_2d(uniform_nodes(4), uniform_nodes(4));
  const int centre = 2 + 5 * 2;
  int count = 0;
  for (Eigen::Index c = 0; c < mesh.n_cells(); ++c)
    for (int k = 0; k < 3; ++k) count += mesh.cells()(k, c) == centre;
  CHECK(count == 6);
}

TEST_CASE("3D Kuhn subdivision") {
  const auto cube = tensor_mesh_3d(uniform_nodes(1 + 1), uniform_nodes(2), uniform_nodes(2));
  CHECK(cube.n_cells() == 6 * 8);

  Eigen::VectorXd unit(2);
  unit << 0.0, 1.0;
  const NodeSet1D single(unit);
  const auto one = tensor_mesh_3d(single, single, single);
  REQUIRE(one.n_cells() == 6);
  for (Eigen::Index c = 0; c < 6; ++c) CHECK(one.cell_volumes()[c] == doctest::Approx(1.0 / 6).epsilon(1e-14));
  // every tetrahedron contains the main diagonal
  for (Eigen::Index c = 0; c < 6; ++c) {
    std::set<int> v(one.cells().col(c).data(), one.cells().col(c).data() + 4);
    CHECK(v.count(0) == 1);
    CHECK(v.count(7) == 1);
  }
  CHECK(is_conforming(one));
}

TEST_CASE("13 intervals per direction give 12^3 = 1728 free vertices") {
  const auto mesh = build_mesh(3, params(GradingFamily::Uniform, 13));
  CHECK(mesh.n_free() == 1728);
  CHECK(mesh.n_cells() == 6 * 13 * 13 * 13);
  CHECK(build_mesh(3, params(GradingFamily::Uniform, 12)).n_free() == 1331);
}

TEST_CASE("mesh invariants on fixture meshes") {
  for (const auto& mesh : fixture_meshes()) {
    CAPTURE(mesh.dim());
    CAPTURE(mesh.n_cells());
    CHECK(mesh.cell_volumes().minCoeff() > 0);
    CHECK(std::abs(mesh.cell_volumes().sum() - 1.0) <= 1e-12);
    for (Eigen::Index c = 0; c < mesh.n_cells(); ++c)
      CHECK(signed_simplex_volume(mesh.cell_vertices(c)) > 0);
    CHECK(is_conforming(mesh));

    const Eigen::VectorXd all = all_patch_volumes(mesh);
    CHECK(std::abs(all.sum() - (mesh.dim() + 1) * mesh.cell_volumes().sum()) <= 1e-12);

    const PatchStats s = patch_stats(mesh);
    CHECK(s.h_const >= 1.0);
    CHECK(s.m_const >= mesh.dim() + 1);
    CHECK(s.patch_volumes.minCoeff() > 0);
    CHECK(s.omega_min == s.patch_volumes.minCoeff());

    const BruteForce ref = brute_force(mesh);
    CHECK(s.h_const == ref.h);
    CHECK((s.patch_volumes - ref.omega).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("conformity check rejects a mesh with a missing cell") {
  const auto mesh = tensor_mesh_2d(uniform_nodes(3), uniform_nodes(3));
  SimplicialMesh::Cells cells = mesh.cells().leftCols(mesh.n_cells() - 1);
  cells.col(4) = mesh.cells().col(mesh.n_cells() - 1);
  const SimplicialMesh broken(2, mesh.vertices(), cells, mesh.boundary_mask());
  CHECK_FALSE(is_conforming(broken));
}

TEST_CASE("degenerate cells are rejected") {
  Eigen::MatrixXd v(2, 3);
  v << 0, 1, 2, 0, 1, 2;
  SimplicialMesh::Cells c(3, 1);
  c << 0, 1, 2;
  CHECK_THROWS_AS(SimplicialMesh(2, v, c, {true, true, true}), InvalidArgument);
}

TEST_CASE("patch statistics on a uniform 2D grid") {
  const int n = 8;
  const double h = 1.0 / n;
  const auto s = patch_stats(build_mesh(2, params(GradingFamily::Uniform, n)));
  CHECK(s.n_free == (n - 1) * (n - 1));
  CHECK(s.n_cells == 2 * n * n);
  CHECK(s.m_const == 6);
  CHECK(s.h_const == doctest::Approx(1.0).epsilon(1e-13));
  for (Eigen::Index i = 0; i < s.n_free; ++i)
    CHECK(s.patch_volumes[i] == doctest::Approx(3 * h * h).epsilon(1e-13));
  CHECK(s.k_min == doctest::Approx(h * h / 2).epsilon(1e-13));
}

TEST_CASE("patch statistics on the 2D single layer, n = 2, eps = 0.2") {
  // Free vertices (0.5, 0.5) and (0.6, 0.5); incident triangles enumerated by
  // hand: 0.125 * 3 + 0.025 + 0.05 = 0.45 and 0.05 + 0.1 + 0.025 + 0.2 = 0.375.
  const auto s = patch_stats(build_mesh(2, params(GradingFamily::SingleLayer, 2, 0.2)));
  REQUIRE(s.n_free == 2);
  CHECK(s.k_min == doctest::Approx(0.025).epsilon(1e-13));
  CHECK(s.patch_volumes[0] == doctest::Approx(0.45).epsilon(1e-13));
  CHECK(s.patch_volumes[1] == doctest::Approx(0.375).epsilon(1e-13));
  CHECK(s.omega_min == doctest::Approx(0.375).epsilon(1e-13));
  CHECK(s.m_const == 6);
  CHECK(s.h_const == doctest::Approx(5.0).epsilon(1e-13));
}

TEST_CASE("H on a 2D Shishkin mesh scales like eps^-2 / ln^2 n") {
  // Cells on either side of the transition corner have areas h_f^2/2 and h_c^2/2.
  const int n = 128;
  const double eps = 0.05;
  const double tau = 2 * eps * std::log(n);
  const double h_fine = tau / n;
  const double h_coarse = (1 - tau / 2) / (n / 2);
  const auto s = patch_stats(build_mesh(2, params(GradingFamily::Shishkin, n, eps)));
  CHECK(s.h_const == doctest::Approx(std::pow(h_coarse / h_fine, 2)).epsilon(1e-10));
  const double scaled = s.h_const * eps * eps * std::pow(std::log(n), 2);
  CHECK(scaled > 0.1);
  CHECK(scaled < 10);
}

TEST_CASE("patch_stats requires a free vertex") {
  Eigen::VectorXd unit(2);
  unit << 0.0, 1.0;
  const NodeSet1D single(unit);
  CHECK_THROWS_AS(patch_stats(tensor_mesh_2d(single, single)), InvalidArgument);
}

TEST_CASE("mesh export format") {
  const auto mesh = tensor_mesh_2d(uniform_nodes(2), uniform_nodes(2));
  std::ostringstream out;
  write_mesh(out, mesh);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "2 9 8");
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == 9 + 8);
}
