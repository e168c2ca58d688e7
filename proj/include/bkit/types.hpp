#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bkit {

enum class errc {
    nonpositive_length,
    angle_out_of_range,
    not_realizable,
    cosine_out_of_range,
    singular_basis,
    singular_mixed,
    singular_matrix,
    not_positive_definite,
    degenerate_alpha,
    dimension_mismatch,
    frame_mismatch,
    unresolvable,
    missing_dual_data,
    generation_exhausted,
    bad_argument,
};

const char* errc_name(errc code);

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

// arccos arguments this close outside [-1,1] are clamped; farther out is an error
inline constexpr double kClampTol = 1e-9;

// Dense square matrix, row-major. Closed-form det/inverse at n <= 3,
// partial-pivot elimination for larger n.
class Mat {
public:
    explicit Mat(std::size_t n) : n_(n), e_(n * n, 0.0) {}
    Mat(std::size_t n, std::vector<double> entries);

    static Mat identity(std::size_t n);

    std::size_t dim() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
    const std::vector<double>& data() const { return e_; }

    Mat transposed() const;
    Mat operator*(const Mat& rhs) const;
    std::vector<double> operator*(const std::vector<double>& v) const;
    Mat operator-(const Mat& rhs) const;

    double det() const;
    Mat inverse() const;  // throws error(errc::singular_matrix)

    double max_abs() const;
    bool is_symmetric(double tol = 0.0) const;

private:
    std::size_t n_;
    std::vector<double> e_;
};

// Lengths and pairwise angles (radians) of one basis set.  Pair order for
// n=3 is (1,2), (1,3), (2,3); n=2 uses only the first slot.
struct BasisGeometry {
    int n = 0;
    std::array<double, 3> lengths{};
    std::array<double, 3> angles{};

    double angle(int i, int j) const;        // 1-based indices, i < j
    void set_angle(int i, int j, double a);  // 1-based indices, i < j
    int angle_count() const { return n == 2 ? 1 : 3; }
};

// Matrix of cos(gamma_ij), the inter-set angles.
struct GammaMatrix {
    int n = 0;
    Mat cosines;

    explicit GammaMatrix(int dim) : n(dim), cosines(static_cast<std::size_t>(dim)) {}
    GammaMatrix(int dim, Mat c);
};

enum class Frame { orthonormal, primal, dual };

struct CoordinateVector {
    int n = 0;
    std::vector<double> coords;
    Frame frame = Frame::orthonormal;
};

// Delta and the three Omega combinations of the 3D angle set.
struct DeltaOmega {
    double delta = 0.0;
    std::array<double, 3> omega{};
};

// Throws unless all BasisGeometry invariants hold (positive lengths,
// angles in (0, pi), strict linear independence).
const BasisGeometry& validate_geometry(const BasisGeometry& g);

// Throws unless symmetric with positive leading principal minors.
const Mat& validate_metric(const Mat& g);

// Recovers lengths and angles from a metric matrix (n = 2 or 3).
BasisGeometry geometry_from_metric(const Mat& g);

// cos(gamma_ij) = Q_ij / (|a_i| |a*_j|)
GammaMatrix gammas_from_mixed(const Mat& q, const std::vector<double>& primal_lengths,
                              const std::vector<double>& dual_lengths);

// Clamps x into [-1,1] if within kClampTol, else throws cosine_out_of_range.
double clamp_cosine(double x);

}  // namespace bkit
