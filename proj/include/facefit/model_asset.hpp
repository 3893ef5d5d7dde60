#pragma once

#include "facefit/common.hpp"

#include <array>
#include <string>
#include <vector>

namespace facefit {

struct LandmarkBinding {
    int vertex = 0;
    double weight = 1.0; // per-landmark loss weight
};

// Sphere proxy guarding the eyelid region against eyeball intersection.
struct EyeballProxy {
    int joint = 0;               // attachment joint
    Vec3 center_offset{0, 0, 0}; // offset from the bind joint, joint-local
    double radius = 1.0;
    std::vector<int> guarded_vertices; // eyelid skin vertices
};

struct HullPlane {
    Vec3 normal{0, 0, 1}; // unit, outward, hull-local frame
    double offset = 0.0;  // plane is {x : normal . x + offset = 0}
};

// Convex hull (teeth part) attached to a joint; planes live in the joint's
// bind-local frame and move rigidly with it.
struct ConvexHullProxy {
    int joint = 0;
    std::vector<HullPlane> planes;
};

// The rigged blendshape head. Linear identity/expression blendshapes over a
// base mesh, a linear joint regressor, and linear blend skinning weights,
// plus the landmark scheme and the collision proxies.
struct ModelAsset {
    int vertex_count = 0;     // N
    int joint_count = 0;      // K
    int identity_dims = 0;    // |beta|
    int expression_dims = 0;  // |psi|

    MatX base_vertices;        // N x 3
    MatX identity_basis;       // 3N x |beta|, vertex-major rows
    MatX expression_basis;     // 3N x |psi|
    std::vector<int> joint_parents; // -1 sentinel for the root
    MatX base_joints;          // K x 3
    MatX joint_identity_basis; // 3K x |beta|
    MatX skinning_weights;     // K x N, columns sum to 1, <= 4 nonzero each

    std::vector<LandmarkBinding> landmark_bindings;
    std::vector<EyeballProxy> eyeballs;
    std::vector<ConvexHullProxy> teeth_hulls;
    std::vector<int> lip_vertices;

    Eigen::MatrixXi faces; // T x 3, for mesh export; not used by the math

    int num_landmarks() const { return static_cast<int>(landmark_bindings.size()); }
    int pose_dims() const { return 3 * joint_count + 3; }

    // Throws std::invalid_argument on any structural invariant violation
    // (dimension mismatch, non-stochastic skinning column, cyclic or
    // non-topological joint order, non-unit hull normal, bad indices).
    void validate() const;
};

// Static structural reachability, computed once per asset: which parameters
// can influence which vertices. This is what the per-residual sparsity sets
// are built from.
struct AssetStructure {
    std::vector<std::vector<int>> joint_chain;    // per joint: root..joint
    std::vector<std::vector<int>> vertex_joints;  // joints whose rotation can move v
    std::vector<std::vector<int>> vertex_beta;    // beta columns reaching v (mesh or joint path)
    std::vector<std::vector<int>> vertex_psi;     // psi columns with support on v
    std::vector<std::vector<int>> joint_beta;     // per joint: beta columns moving its chain

    explicit AssetStructure(const ModelAsset& asset);
};

// ---------------------------------------------------------------------------
// Parameters

// Full parameter set for a sequence: identity shared across frames,
// expression/pose per frame, extrinsics and focal per camera.
struct Parameters {
    VecX beta;     // |beta|
    MatX psi;      // F x |psi|
    MatX theta;    // F x (3K+3): per-joint axis-angle then root translation
    MatX cam_rot;  // C x 3 axis-angle, world->camera
    MatX cam_trans;// C x 3
    VecX focal;    // C, pixels

    int frames() const { return static_cast<int>(psi.rows()); }
    int cameras() const { return static_cast<int>(focal.size()); }

    static Parameters zeros(int beta_dims, int psi_dims, int pose_dims, int frames, int cameras);
    bool all_finite() const;
};

// Flat ordering of the optimization vector:
// [beta | psi frame-major | theta frame-major | per-camera rot,trans,focal].
struct ParameterLayout {
    int nb = 0, np = 0, nt = 0, F = 0, C = 0;

    ParameterLayout() = default;
    ParameterLayout(int beta_dims, int psi_dims, int pose_dims, int frames, int cameras)
        : nb(beta_dims), np(psi_dims), nt(pose_dims), F(frames), C(cameras) {}

    int total() const { return nb + F * (np + nt) + 7 * C; }
    int beta(int m) const { return m; }
    int psi(int frame, int m) const { return nb + frame * np + m; }
    int theta(int frame, int channel) const { return nb + F * np + frame * nt + channel; }
    int camera(int cam, int channel) const { return nb + F * (np + nt) + 7 * cam + channel; }

    VecX flatten(const Parameters& p) const;
    Parameters unflatten(const VecX& x) const;
};

// ---------------------------------------------------------------------------
// Asset container I/O (versioned JSON; see README for the schema)

void save_asset(const ModelAsset& asset, const std::string& path,
                const std::string& config_json = "{}");
ModelAsset load_asset(const std::string& path);

void save_parameters(const Parameters& params, const std::string& path,
                     const std::string& config_json = "{}");
Parameters load_parameters(const std::string& path);

} // namespace facefit
