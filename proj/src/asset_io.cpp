#include "facefit/model_asset.hpp"

#include "json_util.hpp"

namespace facefit {

void save_asset(const ModelAsset& asset, const std::string& path, const std::string& config_json) {
    asset.validate();
    Json j;
    j["format"] = "facefit-asset";
    j["version"] = 1;
    j["config"] = Json::parse(config_json);
    j["dims"] = {{"vertices", asset.vertex_count},
                 {"joints", asset.joint_count},
                 {"identity", asset.identity_dims},
                 {"expression", asset.expression_dims},
                 {"landmarks", asset.num_landmarks()}};
    j["base_vertices"] = matrix_to_json(asset.base_vertices);
    j["identity_basis"] = matrix_to_json(asset.identity_basis);
    j["expression_basis"] = matrix_to_json(asset.expression_basis);
    j["joint_parents"] = asset.joint_parents;
    j["base_joints"] = matrix_to_json(asset.base_joints);
    j["joint_identity_basis"] = matrix_to_json(asset.joint_identity_basis);

    // Skinning stored sparse as (joint, vertex, value) triplets.
    Json sj = Json::array(), sv = Json::array(), sw = Json::array();
    for (int v = 0; v < asset.vertex_count; ++v)
        for (int k = 0; k < asset.joint_count; ++k)
            if (asset.skinning_weights(k, v) != 0.0) {
                sj.push_back(k);
                sv.push_back(v);
                sw.push_back(asset.skinning_weights(k, v));
            }
    j["skinning"] = {{"joint", sj}, {"vertex", sv}, {"value", sw}};

    Json lv = Json::array(), lw = Json::array();
    for (const auto& lb : asset.landmark_bindings) {
        lv.push_back(lb.vertex);
        lw.push_back(lb.weight);
    }
    j["landmarks"] = {{"vertex", lv}, {"weight", lw}};

    Json eyes = Json::array();
    for (const auto& eye : asset.eyeballs) {
        eyes.push_back({{"joint", eye.joint},
                        {"offset", {eye.center_offset.x(), eye.center_offset.y(), eye.center_offset.z()}},
                        {"radius", eye.radius},
                        {"guarded", eye.guarded_vertices}});
    }
    j["eyeballs"] = eyes;

    Json hulls = Json::array();
    for (const auto& hull : asset.teeth_hulls) {
        Json normals = Json::array(), offsets = Json::array();
        for (const auto& plane : hull.planes) {
            normals.push_back(plane.normal.x());
            normals.push_back(plane.normal.y());
            normals.push_back(plane.normal.z());
            offsets.push_back(plane.offset);
        }
        hulls.push_back({{"joint", hull.joint}, {"normals", normals}, {"offsets", offsets}});
    }
    j["teeth_hulls"] = hulls;
    j["lip_vertices"] = asset.lip_vertices;

    Json faces = Json::array();
    for (Eigen::Index t = 0; t < asset.faces.rows(); ++t)
        for (int d = 0; d < 3; ++d) faces.push_back(asset.faces(t, d));
    j["faces"] = faces;

    write_json_file(j, path);
}

ModelAsset load_asset(const std::string& path) {
    const Json j = read_json_file(path);
    check_format(j, "facefit-asset", 1);

    ModelAsset asset;
    const Json& dims = j.at("dims");
    asset.vertex_count = dims.at("vertices").get<int>();
    asset.joint_count = dims.at("joints").get<int>();
    asset.identity_dims = dims.at("identity").get<int>();
    asset.expression_dims = dims.at("expression").get<int>();
    const int N = asset.vertex_count, K = asset.joint_count;

    asset.base_vertices = matrix_from_json(j.at("base_vertices"), N, 3);
    asset.identity_basis = matrix_from_json(j.at("identity_basis"), 3 * N, asset.identity_dims);
    asset.expression_basis = matrix_from_json(j.at("expression_basis"), 3 * N, asset.expression_dims);
    asset.joint_parents = j.at("joint_parents").get<std::vector<int>>();
    asset.base_joints = matrix_from_json(j.at("base_joints"), K, 3);
    asset.joint_identity_basis = matrix_from_json(j.at("joint_identity_basis"), 3 * K, asset.identity_dims);

    asset.skinning_weights = MatX::Zero(K, N);
    const Json& skin = j.at("skinning");
    const auto& sj = skin.at("joint");
    const auto& sv = skin.at("vertex");
    const auto& sw = skin.at("value");
    require(sj.size() == sv.size() && sj.size() == sw.size(), "asset: skinning triplet size mismatch");
    for (std::size_t i = 0; i < sj.size(); ++i)
        asset.skinning_weights(sj[i].get<int>(), sv[i].get<int>()) = sw[i].get<double>();

    const Json& lm = j.at("landmarks");
    const auto& lv = lm.at("vertex");
    const auto& lw = lm.at("weight");
    require(lv.size() == lw.size(), "asset: landmark arrays size mismatch");
    asset.landmark_bindings.resize(lv.size());
    for (std::size_t i = 0; i < lv.size(); ++i)
        asset.landmark_bindings[i] = {lv[i].get<int>(), lw[i].get<double>()};

    for (const Json& e : j.at("eyeballs")) {
        EyeballProxy eye;
        eye.joint = e.at("joint").get<int>();
        const auto& off = e.at("offset");
        eye.center_offset = Vec3(off[0].get<double>(), off[1].get<double>(), off[2].get<double>());
        eye.radius = e.at("radius").get<double>();
        eye.guarded_vertices = e.at("guarded").get<std::vector<int>>();
        asset.eyeballs.push_back(std::move(eye));
    }

    for (const Json& h : j.at("teeth_hulls")) {
        ConvexHullProxy hull;
        hull.joint = h.at("joint").get<int>();
        const auto& normals = h.at("normals");
        const auto& offsets = h.at("offsets");
        require(normals.size() == 3 * offsets.size(), "asset: hull plane arrays size mismatch");
        for (std::size_t i = 0; i < offsets.size(); ++i) {
            HullPlane plane;
            plane.normal = Vec3(normals[3 * i].get<double>(), normals[3 * i + 1].get<double>(),
                                normals[3 * i + 2].get<double>());
            plane.offset = offsets[i].get<double>();
            hull.planes.push_back(plane);
        }
        asset.teeth_hulls.push_back(std::move(hull));
    }
    asset.lip_vertices = j.at("lip_vertices").get<std::vector<int>>();

    const auto& faces = j.at("faces");
    require(faces.size() % 3 == 0, "asset: faces array not a multiple of 3");
    asset.faces.resize(faces.size() / 3, 3);
    for (Eigen::Index t = 0; t < asset.faces.rows(); ++t)
        for (int d = 0; d < 3; ++d) asset.faces(t, d) = faces[3 * t + d].get<int>();

    asset.validate();
    return asset;
}

void save_parameters(const Parameters& params, const std::string& path, const std::string& config_json) {
    Json j;
    j["format"] = "facefit-params";
    j["version"] = 1;
    j["config"] = Json::parse(config_json);
    j["dims"] = {{"identity", params.beta.size()},
                 {"expression", params.psi.cols()},
                 {"pose", params.theta.cols()},
                 {"frames", params.frames()},
                 {"cameras", params.cameras()}};
    j["beta"] = vector_to_json(params.beta);
    j["psi"] = matrix_to_json(params.psi);
    j["theta"] = matrix_to_json(params.theta);
    j["cam_rot"] = matrix_to_json(params.cam_rot);
    j["cam_trans"] = matrix_to_json(params.cam_trans);
    j["focal"] = vector_to_json(params.focal);
    write_json_file(j, path);
}

Parameters load_parameters(const std::string& path) {
    const Json j = read_json_file(path);
    check_format(j, "facefit-params", 1);
    const Json& dims = j.at("dims");
    const int nb = dims.at("identity").get<int>();
    const int np = dims.at("expression").get<int>();
    const int nt = dims.at("pose").get<int>();
    const int F = dims.at("frames").get<int>();
    const int C = dims.at("cameras").get<int>();

    Parameters p;
    p.beta = vector_from_json(j.at("beta"));
    require(p.beta.size() == nb, "params: beta size mismatch");
    p.psi = matrix_from_json(j.at("psi"), F, np);
    p.theta = matrix_from_json(j.at("theta"), F, nt);
    p.cam_rot = matrix_from_json(j.at("cam_rot"), C, 3);
    p.cam_trans = matrix_from_json(j.at("cam_trans"), C, 3);
    p.focal = vector_from_json(j.at("focal"));
    require(p.focal.size() == C, "params: focal size mismatch");
    return p;
}

} // namespace facefit
