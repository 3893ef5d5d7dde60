#pragma once

#include "facefit/model_asset.hpp"

#include <vector>

namespace facefit {

// Rotation helpers (axis-angle / exponential map).
Mat3 rotation_matrix(const Vec3& axis_angle);
Vec3 axis_angle_from_matrix(const Mat3& rotation);

// Columns of the result are d(R(w) z)/dw_i, the derivative of a rotated
// point with respect to the axis-angle vector (Gallego & Yezzi closed form,
// with the w -> 0 limit -[z]_x).
Mat3 rotate_point_jacobian(const Vec3& axis_angle, const Vec3& point);

// ---------------------------------------------------------------------------
// Bind pose

// T(beta, psi): base vertices displaced by the identity and expression
// blendshapes. Linear in both coefficient vectors.
MatX bind_mesh(const ModelAsset& asset, const VecX& beta, const VecX& psi);

// Same, restricted to a vertex subset (rows follow the subset order).
MatX bind_mesh_subset(const ModelAsset& asset, const VecX& beta, const VecX& psi,
                      const std::vector<int>& vertices);

// J(beta): bind joint locations under the linear joint regressor.
MatX bind_joints(const ModelAsset& asset, const VecX& beta);

// ---------------------------------------------------------------------------
// Forward kinematics / skinning

// Per-joint global affine transforms G_k(x) = Q_k x + u_k for one frame's
// pose, plus the cached pieces the derivatives need. Joint transforms
// compose parent-to-child, each rotating about its bind joint location; the
// root additionally carries the global translation channel.
struct FrameKinematics {
    std::vector<Mat3> rotation;       // Q_k, global
    std::vector<Vec3> translation;    // u_k
    std::vector<Vec3> local_axis_angle; // w_k, the raw pose channels
    std::vector<Mat3> parent_rotation;   // Q_parent(k), identity for the root
    std::vector<Mat3> pre_bind_coupling; // Q_parent(k) (I - R_k), for d/d(bind joint)
    std::vector<Vec3> joint_world;    // posed joint pivot positions G_k(b_k)

    Vec3 apply(int joint, const Vec3& x) const { return rotation[joint] * x + translation[joint]; }
};

FrameKinematics forward_kinematics(const ModelAsset& asset, const MatX& bind_joints,
                                   const VecX& theta_frame);

// Linear blend skinning of a full bind mesh.
MatX skin(const ModelAsset& asset, const MatX& bind_vertices, const MatX& bind_joints,
          const VecX& theta_frame);

// Skinning of a vertex subset against a precomputed FK cache; bind_subset
// rows follow `vertices`.
MatX skin_subset(const ModelAsset& asset, const MatX& bind_subset,
                 const std::vector<int>& vertices, const FrameKinematics& fk);

// M(beta, psi, theta) for one frame: full posed mesh.
MatX mesh_generate(const ModelAsset& asset, const Parameters& params, int frame);

// ---------------------------------------------------------------------------
// Analytic derivatives

// Dense derivative blocks of one posed vertex position with respect to
// (beta, psi_frame, theta_frame).
struct VertexJacobian {
    Mat3X d_beta;  // 3 x |beta|
    Mat3X d_psi;   // 3 x |psi|
    Mat3X d_theta; // 3 x (3K+3)
};

// Derivative of a posed vertex. `bind_position` is the vertex's bind-pose
// position; d_bind_beta / d_bind_psi are the 3 x dim derivative of the bind
// position w.r.t. the coefficients (basis rows for a mesh vertex, the joint
// regressor rows for a point riding a joint, zero for a fixed local point).
// `weights` is the K-vector of skinning weights.
VertexJacobian posed_vertex_jacobian(const ModelAsset& asset, const AssetStructure& structure,
                                     const FrameKinematics& fk, const VecX& weights,
                                     const Vec3& bind_position, const Mat3X& d_bind_beta,
                                     const Mat3X& d_bind_psi);

// Derivatives of all landmark-bound vertices w.r.t. (beta, psi_frame,
// theta_frame), plus the posed positions themselves.
struct LandmarkDerivatives {
    MatX positions; // |L_model| x 3 posed positions
    std::vector<VertexJacobian> jacobians;
};

LandmarkDerivatives mesh_jacobian(const ModelAsset& asset, const AssetStructure& structure,
                                  const Parameters& params, int frame);

// Rewrites a frame's pose channels so the posed mesh is rigidly transformed
// by (rotation, translation): the transform is composed into the root
// channel, bind data untouched.
VecX compose_rigid_into_root(const ModelAsset& asset, const MatX& bind_joints,
                             const VecX& theta_frame, const Mat3& rotation,
                             const Vec3& translation);

} // namespace facefit
