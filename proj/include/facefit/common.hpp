#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace facefit {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using VecX = Eigen::VectorXd;
using Mat3 = Eigen::Matrix3d;
using MatX = Eigen::MatrixXd;
using Mat23 = Eigen::Matrix<double, 2, 3>;
using Mat3X = Eigen::Matrix<double, 3, Eigen::Dynamic>;

// Camera-space depth below which a point counts as behind the camera.
inline constexpr double kDepthEpsilon = 1e-6;

// Smallest admissible landmark uncertainty, in pixels. Guards the 1/sigma^2
// divisions once sigma values come from files instead of a positive-by-
// construction network output.
inline constexpr double kSigmaFloor = 1e-3;

// Thrown when a point to be projected lies at or behind the camera plane.
class BehindCameraError : public std::runtime_error {
public:
    BehindCameraError(int camera, double depth)
        : std::runtime_error("point behind camera " + std::to_string(camera) +
                             " (depth " + std::to_string(depth) + ")"),
          camera_(camera), depth_(depth) {}

    int camera() const { return camera_; }
    double depth() const { return depth_; }

private:
    int camera_;
    double depth_;
};

inline void require(bool condition, const std::string& message) {
    if (!condition) throw std::invalid_argument(message);
}

} // namespace facefit
