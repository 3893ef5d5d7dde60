#include "facefit/model_asset.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace facefit {

void ModelAsset::validate() const {
    const int N = vertex_count;
    const int K = joint_count;
    require(N > 0 && K > 0 && identity_dims >= 0 && expression_dims >= 0,
            "asset: non-positive dimensions");
    require(base_vertices.rows() == N && base_vertices.cols() == 3,
            "asset: base_vertices shape mismatch");
    require(identity_basis.rows() == 3 * N && identity_basis.cols() == identity_dims,
            "asset: identity_basis shape mismatch");
    require(expression_basis.rows() == 3 * N && expression_basis.cols() == expression_dims,
            "asset: expression_basis shape mismatch");
    require(static_cast<int>(joint_parents.size()) == K, "asset: joint_parents size mismatch");
    require(base_joints.rows() == K && base_joints.cols() == 3, "asset: base_joints shape mismatch");
    require(joint_identity_basis.rows() == 3 * K && joint_identity_basis.cols() == identity_dims,
            "asset: joint_identity_basis shape mismatch");
    require(skinning_weights.rows() == K && skinning_weights.cols() == N,
            "asset: skinning_weights shape mismatch");

    int roots = 0;
    for (int k = 0; k < K; ++k) {
        const int p = joint_parents[k];
        if (p < 0) {
            ++roots;
        } else {
            require(p < k, "asset: joint parents must be topologically ordered");
        }
    }
    require(roots == 1, "asset: joint hierarchy must have exactly one root");

    for (int v = 0; v < N; ++v) {
        double sum = 0.0;
        int nonzero = 0;
        for (int k = 0; k < K; ++k) {
            const double w = skinning_weights(k, v);
            require(w >= 0.0, "asset: negative skinning weight");
            if (w != 0.0) ++nonzero;
            sum += w;
        }
        require(std::abs(sum - 1.0) < 1e-9, "asset: skinning weights must sum to 1 per vertex");
        require(nonzero <= 4, "asset: more than 4 skinning weights on a vertex");
    }

    for (const auto& lb : landmark_bindings) {
        require(lb.vertex >= 0 && lb.vertex < N, "asset: landmark binding out of range");
        require(lb.weight >= 0.0, "asset: negative landmark weight");
    }
    for (const auto& eye : eyeballs) {
        require(eye.joint >= 0 && eye.joint < K, "asset: eyeball joint out of range");
        require(eye.radius > 0.0, "asset: non-positive eyeball radius");
        for (int v : eye.guarded_vertices)
            require(v >= 0 && v < N, "asset: guarded vertex out of range");
    }
    for (const auto& hull : teeth_hulls) {
        require(hull.joint >= 0 && hull.joint < K, "asset: hull joint out of range");
        require(!hull.planes.empty(), "asset: empty hull");
        for (const auto& plane : hull.planes)
            require(std::abs(plane.normal.norm() - 1.0) < 1e-9, "asset: hull normal not unit length");
    }
    for (int v : lip_vertices) require(v >= 0 && v < N, "asset: lip vertex out of range");
    if (faces.size() > 0) {
        require(faces.cols() == 3, "asset: faces must be triangles");
        require(faces.minCoeff() >= 0 && faces.maxCoeff() < N, "asset: face index out of range");
    }
}

AssetStructure::AssetStructure(const ModelAsset& asset) {
    const int N = asset.vertex_count;
    const int K = asset.joint_count;
    const int nb = asset.identity_dims;
    const int np = asset.expression_dims;

    joint_chain.resize(K);
    for (int k = 0; k < K; ++k) {
        std::vector<int> chain;
        for (int j = k; j >= 0; j = asset.joint_parents[j]) chain.push_back(j);
        std::reverse(chain.begin(), chain.end());
        joint_chain[k] = std::move(chain);
    }

    joint_beta.resize(K);
    for (int k = 0; k < K; ++k) {
        std::set<int> cols;
        for (int c : joint_chain[k])
            for (int m = 0; m < nb; ++m)
                for (int d = 0; d < 3; ++d)
                    if (asset.joint_identity_basis(3 * c + d, m) != 0.0) {
                        cols.insert(m);
                        break;
                    }
        joint_beta[k].assign(cols.begin(), cols.end());
    }

    vertex_joints.resize(N);
    vertex_beta.resize(N);
    vertex_psi.resize(N);
    for (int v = 0; v < N; ++v) {
        std::set<int> joints;
        for (int k = 0; k < K; ++k)
            if (asset.skinning_weights(k, v) != 0.0)
                for (int c : joint_chain[k]) joints.insert(c);
        vertex_joints[v].assign(joints.begin(), joints.end());

        std::set<int> beta_cols;
        for (int m = 0; m < nb; ++m)
            for (int d = 0; d < 3; ++d)
                if (asset.identity_basis(3 * v + d, m) != 0.0) {
                    beta_cols.insert(m);
                    break;
                }
        for (int k = 0; k < K; ++k)
            if (asset.skinning_weights(k, v) != 0.0)
                beta_cols.insert(joint_beta[k].begin(), joint_beta[k].end());
        vertex_beta[v].assign(beta_cols.begin(), beta_cols.end());

        std::vector<int> psi_cols;
        for (int m = 0; m < np; ++m)
            for (int d = 0; d < 3; ++d)
                if (asset.expression_basis(3 * v + d, m) != 0.0) {
                    psi_cols.push_back(m);
                    break;
                }
        vertex_psi[v] = std::move(psi_cols);
    }
}

Parameters Parameters::zeros(int beta_dims, int psi_dims, int pose_dims, int frames, int cameras) {
    Parameters p;
    p.beta = VecX::Zero(beta_dims);
    p.psi = MatX::Zero(frames, psi_dims);
    p.theta = MatX::Zero(frames, pose_dims);
    p.cam_rot = MatX::Zero(cameras, 3);
    p.cam_trans = MatX::Zero(cameras, 3);
    p.focal = VecX::Zero(cameras);
    return p;
}

bool Parameters::all_finite() const {
    return beta.allFinite() && psi.allFinite() && theta.allFinite() &&
           cam_rot.allFinite() && cam_trans.allFinite() && focal.allFinite();
}

VecX ParameterLayout::flatten(const Parameters& p) const {
    require(p.beta.size() == nb && p.psi.rows() == F && p.psi.cols() == np &&
                p.theta.rows() == F && p.theta.cols() == nt && p.focal.size() == C,
            "layout: parameter dimensions disagree");
    VecX x(total());
    x.head(nb) = p.beta;
    for (int f = 0; f < F; ++f) x.segment(psi(f, 0), np) = p.psi.row(f).transpose();
    for (int f = 0; f < F; ++f) x.segment(theta(f, 0), nt) = p.theta.row(f).transpose();
    for (int c = 0; c < C; ++c) {
        x.segment(camera(c, 0), 3) = p.cam_rot.row(c).transpose();
        x.segment(camera(c, 3), 3) = p.cam_trans.row(c).transpose();
        x(camera(c, 6)) = p.focal(c);
    }
    return x;
}

Parameters ParameterLayout::unflatten(const VecX& x) const {
    require(x.size() == total(), "layout: flat vector size mismatch");
    Parameters p = Parameters::zeros(nb, np, nt, F, C);
    p.beta = x.head(nb);
    for (int f = 0; f < F; ++f) p.psi.row(f) = x.segment(psi(f, 0), np).transpose();
    for (int f = 0; f < F; ++f) p.theta.row(f) = x.segment(theta(f, 0), nt).transpose();
    for (int c = 0; c < C; ++c) {
        p.cam_rot.row(c) = x.segment(camera(c, 0), 3).transpose();
        p.cam_trans.row(c) = x.segment(camera(c, 3), 3).transpose();
        p.focal(c) = x(camera(c, 6));
    }
    return p;
}

} // namespace facefit
