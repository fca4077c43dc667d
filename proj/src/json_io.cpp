#include "csrkit/json_io.hpp"

#include <cstdio>

namespace csrkit {

ordered_json json_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return ordered_json::parse(buf);
}

ordered_json matrix_to_json(const RatMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(rat_str(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

ordered_json vector_to_json(const RatVector& v) {
  ordered_json out = ordered_json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(rat_str(v(i)));
  return out;
}

RatVector vector_from_json(const ordered_json& j) {
  if (!j.is_array()) throw MalformedInputError("vector must be an array of rational strings");
  RatVector v(static_cast<Index>(j.size()));
  Index i = 0;
  for (const auto& e : j) {
    if (!e.is_string()) throw MalformedInputError("vector entries must be strings like \"p/q\"");
    try {
      v(i++) = rat_parse(e.get<std::string>());
    } catch (const std::invalid_argument& ex) {
      throw MalformedInputError(ex.what());
    }
  }
  return v;
}

}  // namespace

RatMatrix matrix_from_json(const ordered_json& j) {
  if (!j.is_array() || j.empty()) throw MalformedInputError("matrix must be a nonempty array of rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j.at(0).size());
  RatMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const auto& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw MalformedInputError("ragged matrix rows");
    }
    for (Index c = 0; c < cols; ++c) {
      const auto& e = row.at(static_cast<std::size_t>(c));
      if (!e.is_string()) throw MalformedInputError("matrix entries must be strings like \"p/q\"");
      try {
        m(i, c) = rat_parse(e.get<std::string>());
      } catch (const std::invalid_argument& ex) {
        throw MalformedInputError(ex.what());
      }
    }
  }
  return m;
}

MatrixFamily family_from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw MalformedInputError(std::string("invalid JSON: ") + ex.what());
  }
  if (!j.is_object() || !j.contains("matrices")) {
    throw MalformedInputError("expected an object with a \"matrices\" field");
  }
  if (j.contains("schema") && j["schema"] != 1) {
    throw MalformedInputError("unsupported schema version");
  }
  MatrixFamily family;
  for (const auto& mj : j["matrices"]) family.push_back(matrix_from_json(mj));
  if (family.empty()) throw MalformedInputError("family must contain at least one matrix");
  Index d;
  try {
    d = family_dim(family);
  } catch (const std::invalid_argument& ex) {
    throw MalformedInputError(ex.what());
  }
  if (j.contains("dim") && j["dim"].get<Index>() != d) {
    throw MalformedInputError("declared dim does not match the matrices");
  }
  return family;
}

ordered_json family_to_json(const MatrixFamily& family) {
  ordered_json j;
  j["schema"] = 1;
  j["dim"] = family_dim(family);
  ordered_json ms = ordered_json::array();
  for (const auto& m : family) ms.push_back(matrix_to_json(m));
  j["matrices"] = std::move(ms);
  return j;
}

std::pair<AffineOperator, AffineOperator> fractal_from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw MalformedInputError(std::string("invalid JSON: ") + ex.what());
  }
  if (!j.is_object() || !j.contains("operators") || j["operators"].size() != 2) {
    throw MalformedInputError("expected an object with exactly two \"operators\"");
  }
  auto parse_op = [](const ordered_json& oj) {
    if (!oj.contains("linear") || !oj.contains("translation")) {
      throw MalformedInputError("operator needs \"linear\" and \"translation\"");
    }
    AffineOperator op;
    op.linear = matrix_from_json(oj["linear"]);
    op.translation = vector_from_json(oj["translation"]);
    if (op.linear.rows() != op.linear.cols() || op.translation.size() != op.linear.rows()) {
      throw MalformedInputError("operator dimensions mismatch");
    }
    return op;
  };
  return {parse_op(j["operators"][0]), parse_op(j["operators"][1])};
}

SubspaceBasis subspace_from_json(const ordered_json& j) {
  SubspaceBasis s;
  s.ambient_dim = j.at("ambient_dim").get<Index>();
  for (const auto& vj : j.at("vectors")) s.vectors.push_back(vector_from_json(vj));
  if (j.contains("affine_point")) s.affine_point = vector_from_json(j["affine_point"]);
  return s;
}

namespace {

const char* kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::orthogonal_subgroup:
      return "orthogonal_subgroup";
    case FamilyKind::kn:
      return "kn";
    case FamilyKind::one_n:
      return "one_n";
    case FamilyKind::torsion:
      return "torsion";
    case FamilyKind::tensor_product:
      return "tensor_product";
    case FamilyKind::transpose_of:
      return "transpose_of";
    case FamilyKind::euler:
      return "euler";
    case FamilyKind::jordan_counterexample:
      return "jordan_counterexample";
    case FamilyKind::conjugated:
      return "conjugated";
  }
  return "unknown";
}

}  // namespace

ordered_json family_spec_to_json(const FamilySpec& spec) {
  ordered_json j;
  j["kind"] = kind_name(spec.kind);
  j["n"] = spec.n;
  j["k"] = spec.k;
  j["r"] = spec.r;
  j["count"] = spec.count;
  if (!spec.k_vec.empty()) j["k_vec"] = spec.k_vec;
  if (!spec.n_vec.empty()) j["n_vec"] = spec.n_vec;
  j["seed"] = spec.seed;
  if (spec.base) j["base"] = family_spec_to_json(*spec.base);
  return j;
}

ordered_json subspace_to_json(const SubspaceBasis& s) {
  ordered_json j;
  j["ambient_dim"] = s.ambient_dim;
  ordered_json vs = ordered_json::array();
  for (const auto& v : s.vectors) vs.push_back(vector_to_json(v));
  j["vectors"] = std::move(vs);
  if (s.affine_point) j["affine_point"] = vector_to_json(*s.affine_point);
  return j;
}

const char* answer_name(Answer a) {
  switch (a) {
    case Answer::Yes:
      return "yes";
    case Answer::No:
      return "no";
    case Answer::Unknown:
      return "unknown";
  }
  return "unknown";
}

const char* method_name(Method m) {
  switch (m) {
    case Method::nonneg_affine:
      return "nonneg_affine";
    case Method::lifted_affine:
      return "lifted_affine";
    case Method::radii_equal:
      return "radii_equal";
    case Method::theorem5_composite:
      return "theorem5_composite";
    case Method::brute_force:
      return "brute_force";
  }
  return "unknown";
}

ordered_json verdict_to_json(const CsrVerdict& v) {
  ordered_json j;
  j["answer"] = answer_name(v.answer);
  j["method"] = method_name(v.method);
  ordered_json cert = ordered_json::object();
  if (v.certificate.invariant_affine) {
    cert["invariant_affine"] = subspace_to_json(*v.certificate.invariant_affine);
  }
  if (v.certificate.perron_vector) {
    cert["perron_vector"] = vector_to_json(*v.certificate.perron_vector);
  }
  if (v.certificate.ellipsoid) cert["ellipsoid"] = matrix_to_json(*v.certificate.ellipsoid);
  if (v.certificate.witness) {
    ordered_json w;
    w["product"] = matrix_to_json(v.certificate.witness->product);
    w["rho"] = json_double(v.certificate.witness->rho);
    w["length"] = v.certificate.witness->length;
    cert["witness"] = std::move(w);
  }
  if (v.certificate.mean_evidence) {
    cert["mean_evidence"] = matrix_to_json(*v.certificate.mean_evidence);
  }
  if (!v.certificate.kernel.empty()) {
    ordered_json k = ordered_json::array();
    for (const auto& vec : v.certificate.kernel) k.push_back(vector_to_json(vec));
    cert["kernel"] = std::move(k);
  }
  if (v.certificate.membership) cert["membership"] = subspace_to_json(*v.certificate.membership);
  if (v.certificate.rho2) cert["rho2"] = json_double(*v.certificate.rho2);
  if (v.certificate.rho4) cert["rho4"] = json_double(*v.certificate.rho4);
  if (v.certificate.csr_block) cert["csr_block"] = *v.certificate.csr_block;
  if (!v.certificate.block_sizes.empty()) cert["block_sizes"] = v.certificate.block_sizes;
  j["certificate"] = std::move(cert);
  if (v.depth_used) j["depth_used"] = *v.depth_used;
  return j;
}

ordered_json radii_report_to_json(const RadiiReport& r) {
  ordered_json j;
  j["rho2"] = {{"value", json_double(r.rho2.value)}, {"error_bound", json_double(r.rho2.error_bound)}};
  j["rho4"] = {{"value", json_double(r.rho4.value)}, {"error_bound", json_double(r.rho4.error_bound)}};
  j["jsr_lower"] = json_double(r.jsr_lower);
  j["jsr_upper"] = json_double(r.jsr_upper);
  j["lsr_lower"] = json_double(r.lsr_lower);
  j["lsr_upper"] = json_double(r.lsr_upper);
  j["depth"] = r.depth;
  j["upper_norm"] = r.norm_used == UpperNorm::ellipsoid ? "ellipsoid" : "spectral";
  return j;
}

ordered_json finiteness_to_json(const FinitenessReport& r) {
  ordered_json j;
  switch (r.status) {
    case Finiteness::finite:
      j["status"] = "finite";
      break;
    case Finiteness::infinite:
      j["status"] = "infinite";
      break;
    case Finiteness::unknown:
      j["status"] = "unknown";
      break;
  }
  if (r.cardinality) j["cardinality"] = *r.cardinality;
  if (r.witness) {
    ordered_json w;
    w["product"] = matrix_to_json(r.witness->product);
    w["rho"] = json_double(r.witness->rho);
    w["length"] = r.witness->length;
    j["witness"] = std::move(w);
  }
  j["mortal_product_found"] = r.mortal_product_found;
  j["mortality_probe_depth"] = r.mortality_probe_depth;
  j["verdict"] = verdict_to_json(r.verdict);
  return j;
}

ordered_json partition_report_to_json(const PartitionReport& r, std::size_t b_value_limit) {
  ordered_json j;
  j["r"] = r.r;
  j["k_max"] = r.k_max;
  ordered_json bs = ordered_json::array();
  const std::size_t n = std::min(b_value_limit, r.b_values.size());
  for (std::size_t i = 0; i < n; ++i) bs.push_back(r.b_values[i].get_str());
  j["b_values"] = std::move(bs);
  j["b_values_truncated"] = n < r.b_values.size();
  j["p1_estimate"] = json_double(r.p1_estimate);
  j["p2_estimate"] = json_double(r.p2_estimate);
  j["csr_verdict"] = verdict_to_json(r.csr_verdict);
  return j;
}

ordered_json lss_report_to_json(const LssReport& r) {
  ordered_json j;
  switch (r.answer) {
    case LssAnswer::uniform:
      j["answer"] = "uniform";
      break;
    case LssAnswer::not_uniform:
      j["answer"] = "not_uniform";
      break;
    case LssAnswer::unknown:
      j["answer"] = "unknown";
      break;
  }
  if (r.h) j["h"] = matrix_to_json(*r.h);
  if (r.certificate) j["certificate"] = subspace_to_json(*r.certificate);
  return j;
}

ordered_json fractal_report_to_json(const FractalReport& r) {
  ordered_json j;
  j["alpha_min"] = json_double(r.alpha_min);
  j["alpha_max"] = json_double(r.alpha_max);
  j["constant_regularity"] = r.constant_regularity;
  if (r.block_scale_r) j["block_scale_r"] = json_double(*r.block_scale_r);
  return j;
}

ordered_json block_factorization_to_json(const BlockFactorization& f) {
  ordered_json j;
  j["block_sizes"] = f.block_sizes;
  j["permutation_only"] = f.permutation_only;
  j["change_of_basis"] = matrix_to_json(f.change_of_basis);
  ordered_json blocks = ordered_json::array();
  for (const auto& fam : f.diagonal_blocks) {
    ordered_json b = ordered_json::array();
    for (const auto& m : fam) b.push_back(matrix_to_json(m));
    blocks.push_back(std::move(b));
  }
  j["diagonal_blocks"] = std::move(blocks);
  return j;
}

}  // namespace csrkit
