// Copyright 2026 The pwig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pwig/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "internal.hpp"
#include "pwig/errors.hpp"

namespace pwig {
namespace {

using json = nlohmann::json;
using detail::append_double;
using detail::Overloaded;

[[noreturn]] void field_error(const std::string& field,
                              const std::string& what) {
  throw ParseError("field " + field + ": " + what);
}

const json& require(const json& obj, const char* key,
                    const std::string& path) {
  if (!obj.is_object()) field_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) field_error(path + "." + key, "missing");
  return *it;
}

std::size_t as_size(const json& v, const std::string& path) {
  if (!v.is_number_unsigned()) {
    field_error(path, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

double as_double(const json& v, const std::string& path) {
  if (!v.is_number()) field_error(path, "expected a number");
  return v.get<double>();
}

Shape parse_shape(const json& v, const std::string& path) {
  if (!v.is_array()) field_error(path, "expected an array of dimensions");
  Shape shape;
  for (std::size_t i = 0; i < v.size(); ++i) {
    shape.push_back(as_size(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return shape;
}

Tensor parse_tensor(const json& v, const std::string& path) {
  Shape shape = parse_shape(require(v, "shape", path), path + ".shape");
  const json& data = require(v, "data", path);
  if (!data.is_array()) field_error(path + ".data", "expected an array");
  std::vector<double> values;
  values.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    values.push_back(
        as_double(data[i], path + ".data[" + std::to_string(i) + "]"));
  }
  try {
    return Tensor(std::move(shape), std::move(values));
  } catch (const Error& e) {
    field_error(path, e.what());
  }
}

LayerSpec parse_layer(const json& v, const std::string& path) {
  const json& type = require(v, "type", path);
  if (!type.is_string()) field_error(path + ".type", "expected a string");
  const std::string tag = type.get<std::string>();
  if (tag == "Dense") {
    return Dense{parse_tensor(require(v, "weights", path), path + ".weights"),
                 parse_tensor(require(v, "bias", path), path + ".bias")};
  }
  if (tag == "Conv2d") {
    return Conv2d{
        parse_tensor(require(v, "kernels", path), path + ".kernels"),
        parse_tensor(require(v, "bias", path), path + ".bias"),
        as_size(require(v, "stride", path), path + ".stride"),
        as_size(require(v, "padding", path), path + ".padding")};
  }
  if (tag == "ReLU") return ReLU{};
  if (tag == "Tanh") return Tanh{};
  if (tag == "MaxPool") {
    return MaxPool{as_size(require(v, "size", path), path + ".size"),
                   as_size(require(v, "stride", path), path + ".stride")};
  }
  if (tag == "Flatten") return Flatten{};
  if (tag == "DropoutInference") {
    return DropoutInference{
        as_double(require(v, "rate", path), path + ".rate")};
  }
  field_error(path + ".type", "unknown layer type '" + tag + "'");
}

json parse_document(std::string_view document) {
  try {
    return json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, document.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < byte; ++i) {
      if (document[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("parse error at line " + std::to_string(line) +
                     ", column " + std::to_string(column) + ": " + e.what());
  }
}

void append_shape(std::string& out, const Shape& shape) {
  out += '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(shape[i]);
  }
  out += ']';
}

void append_tensor(std::string& out, const Tensor& t) {
  out += "{\"shape\":";
  append_shape(out, t.shape());
  out += ",\"data\":[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    append_double(out, t[i]);
  }
  out += "]}";
}

}  // namespace

Network load_network(std::string_view document) {
  const json doc = parse_document(document);
  const json& version = require(doc, "format_version", "$");
  if (!version.is_number_integer() || version.get<int>() != 1) {
    field_error("$.format_version", "unsupported version (expected 1)");
  }
  Shape input_shape =
      parse_shape(require(doc, "input_shape", "$"), "$.input_shape");
  const std::size_t class_count =
      as_size(require(doc, "class_count", "$"), "$.class_count");
  const json& layers = require(doc, "layers", "$");
  if (!layers.is_array()) field_error("$.layers", "expected an array");
  std::vector<LayerSpec> specs;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    specs.push_back(parse_layer(layers[i], "$.layers[" + std::to_string(i) + "]"));
  }
  return Network(std::move(input_shape), std::move(specs), class_count);
}

Network load_network_file(const std::filesystem::path& path) {
  return load_network(read_text_file(path));
}

std::string save_network(const Network& net) {
  std::string out = "{\"format_version\":1,\"input_shape\":";
  append_shape(out, net.input_shape());
  out += ",\"class_count\":" + std::to_string(net.class_count());
  out += ",\"layers\":[";
  bool first = true;
  for (const LayerSpec& layer : net.layers()) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "{\"type\":\"";
    out += layer_tag(layer);
    out += '"';
    std::visit(Overloaded{[&](const Dense& d) {
                            out += ",\"weights\":";
                            append_tensor(out, d.weights);
                            out += ",\"bias\":";
                            append_tensor(out, d.bias);
                          },
                          [&](const Conv2d& c) {
                            out += ",\"kernels\":";
                            append_tensor(out, c.kernels);
                            out += ",\"bias\":";
                            append_tensor(out, c.bias);
                            out += ",\"stride\":" + std::to_string(c.stride);
                            out += ",\"padding\":" + std::to_string(c.padding);
                          },
                          [&](const MaxPool& p) {
                            out += ",\"size\":" + std::to_string(p.size);
                            out += ",\"stride\":" + std::to_string(p.stride);
                          },
                          [&](const DropoutInference& d) {
                            out += ",\"rate\":";
                            append_double(out, d.rate);
                          },
                          [](const auto&) {}},
               layer);
    out += '}';
  }
  out += "\n]}\n";
  return out;
}

Tensor load_tensor(std::string_view document) {
  return parse_tensor(parse_document(document), "$");
}

std::string save_tensor(const Tensor& t) {
  std::string out;
  append_tensor(out, t);
  out += '\n';
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path,
                     std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace pwig
