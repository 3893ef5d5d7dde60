#include "facefit/face_model.hpp"

#include <Eigen/Geometry>

#include <cmath>

namespace facefit {

namespace {

Mat3 skew(const Vec3& v) {
    Mat3 m;
    m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
    return m;
}

} // namespace

Mat3 rotation_matrix(const Vec3& axis_angle) {
    const double angle = axis_angle.norm();
    if (angle < 1e-12) {
        // Second-order expansion keeps derivatives smooth through zero.
        return Mat3::Identity() + skew(axis_angle) + 0.5 * skew(axis_angle) * skew(axis_angle);
    }
    return Eigen::AngleAxisd(angle, axis_angle / angle).toRotationMatrix();
}

Vec3 axis_angle_from_matrix(const Mat3& rotation) {
    const Eigen::AngleAxisd aa(rotation);
    return aa.angle() * aa.axis();
}

Mat3 rotate_point_jacobian(const Vec3& w, const Vec3& z) {
    const double n2 = w.squaredNorm();
    if (n2 < 1e-16) return -skew(z);
    const Mat3 R = rotation_matrix(w);
    const Vec3 Rz = R * z;
    Mat3 jac;
    const Mat3 IminusR = Mat3::Identity() - R;
    for (int i = 0; i < 3; ++i) {
        const Vec3 ei = Vec3::Unit(i);
        const Mat3 m = (w(i) * skew(w) + skew(w.cross(IminusR * ei))) / n2;
        jac.col(i) = m * Rz;
    }
    return jac;
}

MatX bind_mesh(const ModelAsset& asset, const VecX& beta, const VecX& psi) {
    require(beta.size() == asset.identity_dims && psi.size() == asset.expression_dims,
            "bind_mesh: coefficient dimensions disagree with asset");
    const int N = asset.vertex_count;
    VecX flat = asset.identity_basis * beta + asset.expression_basis * psi;
    MatX out = asset.base_vertices;
    for (int v = 0; v < N; ++v) out.row(v) += flat.segment(3 * v, 3).transpose();
    return out;
}

MatX bind_mesh_subset(const ModelAsset& asset, const VecX& beta, const VecX& psi,
                      const std::vector<int>& vertices) {
    require(beta.size() == asset.identity_dims && psi.size() == asset.expression_dims,
            "bind_mesh_subset: coefficient dimensions disagree with asset");
    MatX out(vertices.size(), 3);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const int v = vertices[i];
        Vec3 p = asset.base_vertices.row(v).transpose();
        p += asset.identity_basis.middleRows(3 * v, 3) * beta;
        p += asset.expression_basis.middleRows(3 * v, 3) * psi;
        out.row(i) = p.transpose();
    }
    return out;
}

MatX bind_joints(const ModelAsset& asset, const VecX& beta) {
    require(beta.size() == asset.identity_dims, "bind_joints: beta dimension disagrees with asset");
    VecX flat = asset.joint_identity_basis * beta;
    MatX out = asset.base_joints;
    for (int k = 0; k < asset.joint_count; ++k) out.row(k) += flat.segment(3 * k, 3).transpose();
    return out;
}

FrameKinematics forward_kinematics(const ModelAsset& asset, const MatX& joints,
                                   const VecX& theta_frame) {
    const int K = asset.joint_count;
    require(theta_frame.size() == 3 * K + 3, "forward_kinematics: theta length must be 3K+3");

    FrameKinematics fk;
    fk.rotation.resize(K);
    fk.translation.resize(K);
    fk.local_axis_angle.resize(K);
    fk.parent_rotation.resize(K);
    fk.pre_bind_coupling.resize(K);
    fk.joint_world.resize(K);

    const Vec3 root_translation = theta_frame.segment(3 * K, 3);
    for (int k = 0; k < K; ++k) {
        const Vec3 w = theta_frame.segment(3 * k, 3);
        const Mat3 R = rotation_matrix(w);
        const Vec3 b = joints.row(k).transpose();
        const int parent = asset.joint_parents[k];

        Mat3 Qp = Mat3::Identity();
        Vec3 up = Vec3::Zero();
        if (parent >= 0) {
            Qp = fk.rotation[parent];
            up = fk.translation[parent];
        } else {
            up = root_translation;
        }
        fk.local_axis_angle[k] = w;
        fk.parent_rotation[k] = Qp;
        fk.pre_bind_coupling[k] = Qp * (Mat3::Identity() - R);
        fk.rotation[k] = Qp * R;
        fk.translation[k] = Qp * (b - R * b) + up;
        fk.joint_world[k] = Qp * b + up; // == G_k(b_k), the posed pivot
    }
    return fk;
}

MatX skin(const ModelAsset& asset, const MatX& bind_vertices, const MatX& joints,
          const VecX& theta_frame) {
    require(bind_vertices.rows() == asset.vertex_count, "skin: vertex count mismatch");
    const FrameKinematics fk = forward_kinematics(asset, joints, theta_frame);
    MatX out(asset.vertex_count, 3);
    for (int v = 0; v < asset.vertex_count; ++v) {
        const Vec3 p = bind_vertices.row(v).transpose();
        Vec3 x = Vec3::Zero();
        for (int k = 0; k < asset.joint_count; ++k) {
            const double w = asset.skinning_weights(k, v);
            if (w != 0.0) x += w * fk.apply(k, p);
        }
        out.row(v) = x.transpose();
    }
    return out;
}

MatX skin_subset(const ModelAsset& asset, const MatX& bind_subset,
                 const std::vector<int>& vertices, const FrameKinematics& fk) {
    MatX out(vertices.size(), 3);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const int v = vertices[i];
        const Vec3 p = bind_subset.row(i).transpose();
        Vec3 x = Vec3::Zero();
        for (int k = 0; k < asset.joint_count; ++k) {
            const double w = asset.skinning_weights(k, v);
            if (w != 0.0) x += w * fk.apply(k, p);
        }
        out.row(i) = x.transpose();
    }
    return out;
}

MatX mesh_generate(const ModelAsset& asset, const Parameters& params, int frame) {
    require(frame >= 0 && frame < params.frames(), "mesh_generate: frame index out of range");
    const MatX bind = bind_mesh(asset, params.beta, params.psi.row(frame).transpose());
    const MatX joints = bind_joints(asset, params.beta);
    return skin(asset, bind, joints, params.theta.row(frame).transpose());
}

VertexJacobian posed_vertex_jacobian(const ModelAsset& asset, const AssetStructure& structure,
                                     const FrameKinematics& fk, const VecX& weights,
                                     const Vec3& bind_position, const Mat3X& d_bind_beta,
                                     const Mat3X& d_bind_psi) {
    const int K = asset.joint_count;
    const int nb = asset.identity_dims;
    const int np = asset.expression_dims;

    VertexJacobian jac;
    jac.d_beta = Mat3X::Zero(3, nb);
    jac.d_psi = Mat3X::Zero(3, np);
    jac.d_theta = Mat3X::Zero(3, 3 * K + 3);

    // Blended global rotation carries the bind-position derivatives through.
    Mat3 blended = Mat3::Zero();
    double weight_sum = 0.0;
    for (int k = 0; k < K; ++k) {
        if (weights(k) == 0.0) continue;
        blended += weights(k) * fk.rotation[k];
        weight_sum += weights(k);
    }
    if (d_bind_beta.cols() > 0) jac.d_beta = blended * d_bind_beta;
    if (d_bind_psi.cols() > 0) jac.d_psi = blended * d_bind_psi;

    // Root translation moves every joint transform identically.
    jac.d_theta.middleCols(3 * K, 3) = weight_sum * Mat3::Identity();

    for (int k = 0; k < K; ++k) {
        const double w = weights(k);
        if (w == 0.0) continue;
        const Vec3 posed_k = fk.apply(k, bind_position);
        for (int c : structure.joint_chain[k]) {
            // Rotation of chain joint c: the lever arm is the posed point
            // expressed in c's rotating frame about its posed pivot.
            const Vec3 lever = fk.rotation[c].transpose() * (posed_k - fk.joint_world[c]);
            jac.d_theta.middleCols(3 * c, 3) +=
                w * fk.parent_rotation[c] * rotate_point_jacobian(fk.local_axis_angle[c], lever);

            // Bind location of chain joint c enters through Q_parent (I - R_c).
            jac.d_beta += w * fk.pre_bind_coupling[c] *
                          asset.joint_identity_basis.middleRows(3 * c, 3);
        }
    }
    return jac;
}

LandmarkDerivatives mesh_jacobian(const ModelAsset& asset, const AssetStructure& structure,
                                  const Parameters& params, int frame) {
    require(frame >= 0 && frame < params.frames(), "mesh_jacobian: frame index out of range");
    const VecX psi = params.psi.row(frame).transpose();
    const VecX theta = params.theta.row(frame).transpose();
    const MatX joints = bind_joints(asset, params.beta);
    const FrameKinematics fk = forward_kinematics(asset, joints, theta);

    LandmarkDerivatives out;
    const int L = asset.num_landmarks();
    out.positions.resize(L, 3);
    out.jacobians.reserve(L);
    for (int i = 0; i < L; ++i) {
        const int v = asset.landmark_bindings[i].vertex;
        Vec3 bind = asset.base_vertices.row(v).transpose();
        bind += asset.identity_basis.middleRows(3 * v, 3) * params.beta;
        bind += asset.expression_basis.middleRows(3 * v, 3) * psi;

        const VecX weights = asset.skinning_weights.col(v);
        Vec3 posed = Vec3::Zero();
        for (int k = 0; k < asset.joint_count; ++k)
            if (weights(k) != 0.0) posed += weights(k) * fk.apply(k, bind);
        out.positions.row(i) = posed.transpose();

        out.jacobians.push_back(posed_vertex_jacobian(
            asset, structure, fk, weights, bind, asset.identity_basis.middleRows(3 * v, 3),
            asset.expression_basis.middleRows(3 * v, 3)));
    }
    return out;
}

VecX compose_rigid_into_root(const ModelAsset& asset, const MatX& joints, const VecX& theta_frame,
                             const Mat3& rotation, const Vec3& translation) {
    const int K = asset.joint_count;
    require(theta_frame.size() == 3 * K + 3, "compose_rigid_into_root: theta length mismatch");
    int root = 0;
    for (int k = 0; k < K; ++k)
        if (asset.joint_parents[k] < 0) root = k;

    const Vec3 b = joints.row(root).transpose();
    const Mat3 old_rotation = rotation_matrix(theta_frame.segment(3 * root, 3));
    const Vec3 old_translation = theta_frame.segment(3 * K, 3);

    VecX out = theta_frame;
    out.segment(3 * root, 3) = axis_angle_from_matrix(rotation * old_rotation);
    out.segment(3 * K, 3) = rotation * (b + old_translation) + translation - b;
    return out;
}

} // namespace facefit
