// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#include "pinfo/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace pinfo {

namespace {

using nlohmann::json;

RealMatrix read_real_grid(const json& j, int dim, const char* name) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw Error(ErrorCode::BadInput, std::string(name) + " must be a dim x dim array");
  }
  RealMatrix grid(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw Error(ErrorCode::BadInput, std::string(name) + " must be a dim x dim array");
    }
    for (int c = 0; c < dim; ++c) {
      if (!row[c].is_number()) {
        throw Error(ErrorCode::BadInput, std::string(name) + " entries must be numbers");
      }
      grid(r, c) = row[c].get<double>();
    }
  }
  return grid;
}

std::string emit_real_grid(const RealMatrix& m) {
  std::ostringstream out;
  out << "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (r) out << ",";
    out << "[";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ",";
      out << json_number(m(r, c));
    }
    out << "]";
  }
  out << "]";
  return out.str();
}

}  // namespace

Matrix read_matrix(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re")) {
    throw Error(ErrorCode::BadInput, "matrix JSON needs \"dim\" and \"re\" fields");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<int>() <= 0) {
    throw Error(ErrorCode::BadInput, "\"dim\" must be a positive integer");
  }
  const int dim = j["dim"].get<int>();
  const RealMatrix re = read_real_grid(j["re"], dim, "\"re\"");
  RealMatrix im = RealMatrix::Zero(dim, dim);
  if (j.contains("im")) im = read_real_grid(j["im"], dim, "\"im\"");
  Matrix m(dim, dim);
  m.real() = re;
  m.imag() = im;
  return m;
}

IntensityOperator read_intensity(const json& j) {
  if (j.is_object() && j.contains("N")) {
    if (!j.contains("tau1")) {
      throw Error(ErrorCode::BadInput, "intensity JSON with \"N\" also needs \"tau1\"");
    }
    if (!j["N"].is_number()) {
      throw Error(ErrorCode::BadInput, "\"N\" must be a number");
    }
    DensityOperator tau1(validate_psd(read_matrix(j["tau1"])));
    return intensity_from_density(tau1, j["N"].get<double>());
  }
  return IntensityOperator::from_matrix(read_matrix(j));
}

IntensityVector read_intensity_vector(const json& j) {
  const json* arr = nullptr;
  if (j.is_array()) {
    arr = &j;
  } else if (j.is_object() && j.contains("values") && j["values"].is_array()) {
    arr = &j["values"];
  } else {
    throw Error(ErrorCode::BadInput, "intensity vector must be an array or {\"values\": [...]}");
  }
  RealVector v(arr->size());
  for (std::size_t i = 0; i < arr->size(); ++i) {
    if (!(*arr)[i].is_number()) {
      throw Error(ErrorCode::BadInput, "intensity entries must be numbers");
    }
    v[static_cast<Eigen::Index>(i)] = (*arr)[i].get<double>();
  }
  return IntensityVector(std::move(v));
}

ChannelSpec read_channel(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw Error(ErrorCode::BadInput, "channel JSON needs a string \"kind\"");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "unitary") {
    if (!j.contains("U")) throw Error(ErrorCode::BadInput, "unitary channel needs \"U\"");
    return ChannelSpec(UnitaryChannel{read_matrix(j["U"])});
  }
  if (kind == "povm") {
    if (!j.contains("elements") || !j["elements"].is_array() || j["elements"].empty()) {
      throw Error(ErrorCode::BadInput, "povm channel needs a non-empty \"elements\" array");
    }
    PovmChannel ch;
    for (const json& e : j["elements"]) ch.elements.push_back(read_matrix(e));
    return ChannelSpec(std::move(ch));
  }
  if (kind == "loss") {
    if (!j.contains("eta") || !j["eta"].is_array()) {
      throw Error(ErrorCode::BadInput, "loss channel needs an \"eta\" array");
    }
    RealVector eta(j["eta"].size());
    for (std::size_t i = 0; i < j["eta"].size(); ++i) {
      eta[static_cast<Eigen::Index>(i)] = j["eta"][i].get<double>();
    }
    return ChannelSpec(LossChannel{std::move(eta)});
  }
  if (kind == "background" || kind == "compose") {
    if (!j.contains("gamma_prime")) {
      throw Error(ErrorCode::BadInput, kind + " channel needs \"gamma_prime\"");
    }
    Matrix gp = read_intensity(j["gamma_prime"]).matrix();
    if (kind == "background") return ChannelSpec(BackgroundChannel{std::move(gp)});
    return ChannelSpec(ComposeChannel{std::move(gp)});
  }
  if (kind == "marginalize") {
    if (!j.contains("keep") || !j["keep"].is_array()) {
      throw Error(ErrorCode::BadInput, "marginalize channel needs a \"keep\" array");
    }
    MarginalizeChannel ch;
    for (const json& idx : j["keep"]) {
      if (!idx.is_number_integer()) {
        throw Error(ErrorCode::BadInput, "keep indices must be integers");
      }
      ch.keep.push_back(idx.get<int>());
    }
    return ChannelSpec(std::move(ch));
  }
  if (kind == "affine") {
    if (!j.contains("blocks") || !j["blocks"].is_array() || j["blocks"].empty()) {
      throw Error(ErrorCode::BadInput, "affine channel needs a non-empty \"blocks\" array");
    }
    if (!j.contains("tau0_weight") || !j["tau0_weight"].is_number()) {
      throw Error(ErrorCode::BadInput, "affine channel needs a numeric \"tau0_weight\"");
    }
    std::vector<KrausBlock> blocks;
    for (const json& b : j["blocks"]) {
      KrausBlock block;
      if (b.contains("a10")) {
        if (!b["a10"].is_array()) throw Error(ErrorCode::BadInput, "\"a10\" must be an array");
        block.a10 = Matrix::Zero(b["a10"].size(), 1);
        for (std::size_t i = 0; i < b["a10"].size(); ++i) {
          block.a10(static_cast<Eigen::Index>(i), 0) = b["a10"][i].get<double>();
        }
      }
      if (b.contains("a11")) block.a11 = read_matrix(b["a11"]);
      blocks.push_back(std::move(block));
    }
    return affine_from_kraus(blocks, j["tau0_weight"].get<double>());
  }
  throw Error(ErrorCode::BadInput, "unknown channel kind \"" + kind + "\"");
}

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::BadInput, "cannot open file: " + path);
  }
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    throw Error(ErrorCode::BadInput, "malformed JSON in file: " + path);
  }
  return j;
}

std::string json_number(double v) {
  if (std::isfinite(v)) return format_double(v);
  return "\"" + format_double(v) + "\"";
}

std::string emit_matrix(const Matrix& m) {
  std::ostringstream out;
  out << "{\"dim\":" << m.rows() << ",\"re\":" << emit_real_grid(m.real());
  if (m.imag().cwiseAbs().maxCoeff() > 0.0) {
    out << ",\"im\":" << emit_real_grid(m.imag());
  }
  out << "}";
  return out.str();
}

std::string emit_intensity_vector(const IntensityVector& v) {
  std::ostringstream out;
  out << "{\"values\":[";
  for (int j = 0; j < v.size(); ++j) {
    if (j) out << ",";
    out << json_number(v[j]);
  }
  out << "]}";
  return out.str();
}

std::string emit_report(const DivergenceReport& report) {
  std::ostringstream out;
  out << "{\"kind\":\"" << to_string(report.kind) << "\",\"value\":" << json_number(report.value);
  if (report.s_star) out << ",\"s_star\":" << json_number(*report.s_star);
  out << "}";
  return out.str();
}

}  // namespace pinfo
