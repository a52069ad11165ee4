#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <sstream>

#include "pgkit/matrix_io.hpp"

using namespace pgkit;

namespace {

SparseMatrix parse(const std::string& text) {
  std::istringstream in(text);
  return read_matrix_market(in);
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

Eigen::MatrixXd dense(const SparseMatrix& a) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(a.rows(), a.cols());
  for (const auto& e : a.entries()) m(e.row, e.col) = e.value;
  return m;
}

}  // namespace

TEST(MatrixMarket, Identity) {
  const auto a = parse("%%MatrixMarket matrix coordinate real general\n% comment\n3 3 3\n1 1 1\n2 2 1\n3 3 1.0\n");
  EXPECT_EQ(a.rows(), 3u);
  EXPECT_EQ(a.nnz(), 3u);
  EXPECT_EQ(a, SparseMatrix::identity(3));
}

TEST(MatrixMarket, SymmetricLowerTriangleIsMirrored) {
  const auto a = parse(
      "%%MatrixMarket matrix coordinate real symmetric\n4 4 6\n1 1 4\n2 1 -1\n2 2 4\n3 2 -1\n3 3 4\n4 1 0.5\n");
  EXPECT_EQ(a.nnz(), 2 * 6 - 3u);
  EXPECT_EQ(a.at(0, 1), -1.0);
  EXPECT_EQ(a.at(1, 0), -1.0);
  EXPECT_EQ(a.at(0, 3), 0.5);
  EXPECT_EQ(a.at(3, 0), 0.5);
  EXPECT_TRUE(a.is_symmetric());
}

TEST(MatrixMarket, DuplicatesAreSummed) {
  const auto a = parse("%%MatrixMarket matrix coordinate integer general\n2 2 3\n1 2 3\n1 2 4\n2 1 -2\n");
  EXPECT_EQ(a.at(0, 1), 7.0);
  EXPECT_EQ(a.nnz(), 2u);
}

TEST(MatrixMarket, HeaderIsCaseInsensitive) {
  EXPECT_EQ(parse("%%MatrixMarket MATRIX Coordinate REAL General\n1 1 1\n1 1 2\n").at(0, 0), 2.0);
}

TEST(MatrixMarket, RejectsUnsupportedKinds) {
  EXPECT_THROW(parse("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 1\n"), ParseError);
  EXPECT_THROW(parse("%%MatrixMarket matrix coordinate complex general\n2 2 1\n1 1 1 0\n"), ParseError);
  EXPECT_THROW(parse("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n"), ParseError);
  EXPECT_THROW(parse("%%MatrixMarket matrix coordinate real hermitian\n1 1 1\n1 1 1\n"), ParseError);
}

TEST(MatrixMarket, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line(""), 1u);
  EXPECT_EQ(error_line("%MatrixMarket matrix coordinate real general\n"), 1u);
  EXPECT_EQ(error_line("%%MatrixMarket matrix coordinate real general\n% c\n2 2 2\n1 1 1\n3 1 1\n"), 5u);
  EXPECT_EQ(error_line("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 x\n"), 3u);
  EXPECT_EQ(error_line("%%MatrixMarket matrix coordinate real general\n2 2 3\n1 1 1\n2 2 1\n"), 4u);
  EXPECT_EQ(error_line("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n1 2 1\n"), 3u);
  EXPECT_EQ(error_line("%%MatrixMarket matrix coordinate real general\n2 2\n"), 2u);
  try {
    parse("%%MatrixMarket matrix coordinate real general\n2 2 1\n0 1 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(MatrixMarket, RoundTrip) {
  const auto a = diagdom(30, 0.2, 5);
  for (bool sym : {false, true}) {
    std::stringstream ss;
    write_matrix_market(ss, a, sym);
    EXPECT_EQ(read_matrix_market(ss), a);
  }
}

TEST(MatrixMarket, DataFilesAreSymmetricPositiveDefinite) {
  for (const char* name : {"spring_chain_40.mtx", "quad_mesh_7x7.mtx", "graph_laplacian_60.mtx"}) {
    const auto a = read_matrix_market(std::string(PGKIT_TEST_DATA) + "/" + name);
    EXPECT_TRUE(a.is_symmetric()) << name;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(a));
    EXPECT_GT(es.eigenvalues().minCoeff(), 0.0) << name;
  }
  EXPECT_THROW(read_matrix_market(std::string(PGKIT_TEST_DATA) + "/missing.mtx"), std::exception);
}

TEST(Generators, Poisson2d) {
  const auto a = poisson2d(3);
  EXPECT_EQ(a.rows(), 9u);
  EXPECT_EQ(a.nnz(), 33u);
  EXPECT_EQ(a.at(4, 4), 4.0);
  EXPECT_EQ(a.at(4, 1), -1.0);
  EXPECT_EQ(a.at(2, 3), 0.0);  // no wrap between grid rows
  const auto b = generate_matrix("poisson2d:10");
  EXPECT_EQ(b.rows(), 100u);
  EXPECT_TRUE(b.is_symmetric());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(b));
  EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
  // Smallest eigenvalue of the 5-point Laplacian: 8 sin^2(pi / (2 (side + 1))).
  const double s = std::sin(M_PI / 22.0);
  EXPECT_NEAR(es.eigenvalues().minCoeff(), 8.0 * s * s, 1e-10);
}

TEST(Generators, DiagdomIsReproducibleAndDominant) {
  const auto a = generate_matrix("diagdom:80:0.1:9");
  std::ostringstream x, y;
  write_matrix_market(x, a);
  write_matrix_market(y, generate_matrix("diagdom:80:0.1:9"));
  EXPECT_EQ(x.str(), y.str());
  EXPECT_NE(a, generate_matrix("diagdom:80:0.1:10"));
  EXPECT_EQ(generate_matrix("diagdom:80:0.1:1", "9"), a);
  EXPECT_TRUE(a.is_symmetric());
  for (std::uint32_t i = 0; i < a.rows(); ++i) {
    double off = 0.0;
    for (auto k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k)
      if (a.col_idx()[k] != i) off += std::abs(a.values()[k]);
    EXPECT_GT(a.at(i, i), off);
  }
}

TEST(Generators, BadSpecs) {
  for (const char* spec : {"", "poisson2d", "poisson2d:0", "poisson2d:x", "diagdom:10:2:1", "diagdom:10:0.1",
                           "laplace:3", "diagdom:-4:0.1:1"})
    EXPECT_THROW(generate_matrix(spec), std::invalid_argument) << spec;
}

TEST(SparseMatrix, FromEntriesAndProducts) {
  const auto a = SparseMatrix::from_entries(3, 3, {{0, 0, 2}, {2, 1, 1}, {0, 2, -1}, {2, 1, -1}, {1, 1, 3}});
  EXPECT_EQ(a.nnz(), 3u);  // the (2,1) pair cancels
  EXPECT_EQ(a.multiply({1, 2, 3}), (std::vector<double>{-1, 6, 0}));
  EXPECT_EQ(a.diagonal(), (std::vector<double>{2, 3, 0}));
  EXPECT_FALSE(a.is_symmetric());
  EXPECT_THROW(SparseMatrix::from_entries(2, 2, {{2, 0, 1}}), std::invalid_argument);
  EXPECT_THROW(a.multiply({1, 2}), std::invalid_argument);
}
