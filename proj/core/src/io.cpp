#include "ptopo/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ptopo {

namespace {

std::string fmt17(double v) {
  char buf[36];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Coords decode_g0(Index g0, const Coords& samples) {
  Coords c{};
  c[0] = g0 % samples[0];
  g0 /= samples[0];
  c[1] = g0 % samples[1];
  c[2] = g0 / samples[1];
  return c;
}

Index encode_g0(const Coords& c, const Coords& samples) {
  return c[0] + samples[0] * (c[1] + samples[1] * c[2]);
}

PairClass parse_class(const std::string& s) {
  if (s == "min-saddle") return PairClass::MinSaddle;
  if (s == "saddle-max") return PairClass::SaddleMax;
  if (s == "global") return PairClass::Global;
  throw std::runtime_error("unknown pair class: " + s);
}

std::vector<PersistencePair> sorted_pairs(const PersistenceDiagram& d) {
  std::vector<PersistencePair> pairs = d.pairs;
  std::sort(pairs.begin(), pairs.end(),
            [](const PersistencePair& a, const PersistencePair& b) {
              if (a.cls != b.cls) return a.cls < b.cls;
              if (a.birth_value != b.birth_value)
                return a.birth_value < b.birth_value;
              return a.birth_vertex < b.birth_vertex;
            });
  return pairs;
}

}  // namespace

Dtype parse_dtype(const std::string& s) {
  if (s == "u8" || s == "uint8") return Dtype::U8;
  if (s == "i16" || s == "int16") return Dtype::I16;
  if (s == "u16" || s == "uint16") return Dtype::U16;
  if (s == "f32" || s == "float32") return Dtype::F32;
  if (s == "f64" || s == "float64") return Dtype::F64;
  throw std::runtime_error("unknown dtype: " + s);
}

const char* to_string(Dtype t) {
  switch (t) {
    case Dtype::U8: return "u8";
    case Dtype::I16: return "i16";
    case Dtype::U16: return "u16";
    case Dtype::F32: return "f32";
    case Dtype::F64: return "f64";
  }
  return "?";
}

std::size_t dtype_size(Dtype t) {
  switch (t) {
    case Dtype::U8: return 1;
    case Dtype::I16: return 2;
    case Dtype::U16: return 2;
    case Dtype::F32: return 4;
    case Dtype::F64: return 8;
  }
  return 0;
}

ScalarField read_raw_volume(const std::string& path, const VolumeHeader& header) {
  for (int a = 0; a < 3; ++a)
    if (header.samples[a] < 1)
      throw std::runtime_error("volume dims must be positive");
  const Index n = header.samples[0] * header.samples[1] * header.samples[2];
  const std::string bytes = read_file(path);
  const std::size_t expected = static_cast<std::size_t>(n) * dtype_size(header.dtype);
  if (bytes.size() != expected)
    throw std::runtime_error("volume size mismatch: expected " +
                             std::to_string(expected) + " bytes, file has " +
                             std::to_string(bytes.size()));

  ScalarField field;
  field.samples = header.samples;
  field.values.resize(n);
  const char* p = bytes.data();
  for (Index i = 0; i < n; ++i) {
    double v = 0;
    switch (header.dtype) {
      case Dtype::U8:
        v = static_cast<double>(static_cast<std::uint8_t>(p[i]));
        break;
      case Dtype::I16: {
        std::int16_t x;
        std::memcpy(&x, p + 2 * i, 2);
        v = x;
        break;
      }
      case Dtype::U16: {
        std::uint16_t x;
        std::memcpy(&x, p + 2 * i, 2);
        v = x;
        break;
      }
      case Dtype::F32: {
        float x;
        std::memcpy(&x, p + 4 * i, 4);
        v = x;
        break;
      }
      case Dtype::F64:
        std::memcpy(&v, p + 8 * i, 8);
        break;
    }
    if (std::isnan(v))
      throw std::runtime_error("volume contains NaN at index " + std::to_string(i));
    field.values[i] = v;
  }
  return field;
}

void write_raw_volume(const std::string& path, const ScalarField& field,
                      Dtype dtype) {
  const Index n = field.vertex_count();
  std::string bytes(static_cast<std::size_t>(n) * dtype_size(dtype), '\0');
  char* p = bytes.data();
  for (Index i = 0; i < n; ++i) {
    const double v = field.values[i];
    switch (dtype) {
      case Dtype::U8:
        p[i] = static_cast<char>(static_cast<std::uint8_t>(v));
        break;
      case Dtype::I16: {
        const std::int16_t x = static_cast<std::int16_t>(v);
        std::memcpy(p + 2 * i, &x, 2);
        break;
      }
      case Dtype::U16: {
        const std::uint16_t x = static_cast<std::uint16_t>(v);
        std::memcpy(p + 2 * i, &x, 2);
        break;
      }
      case Dtype::F32: {
        const float x = static_cast<float>(v);
        std::memcpy(p + 4 * i, &x, 4);
        break;
      }
      case Dtype::F64:
        std::memcpy(p + 8 * i, &v, 8);
        break;
    }
  }
  write_file_atomic(path, bytes);
}

std::optional<VolumeHeader> read_sidecar(const std::string& volume_path) {
  const std::string path = volume_path + ".json";
  std::ifstream in(path);
  if (!in) return std::nullopt;
  nlohmann::json j;
  in >> j;
  VolumeHeader h;
  const auto dims = j.at("dims");
  for (int a = 0; a < 3; ++a) h.samples[a] = dims.at(a).get<Index>();
  h.dtype = parse_dtype(j.at("dtype").get<std::string>());
  return h;
}

void write_sidecar(const std::string& volume_path, const VolumeHeader& header) {
  nlohmann::json j;
  j["dims"] = {header.samples[0], header.samples[1], header.samples[2]};
  j["dtype"] = to_string(header.dtype);
  write_file_atomic(volume_path + ".json", j.dump(2) + "\n");
}

void write_diagram(const PersistenceDiagram& diagram, const Coords& samples,
                   const std::string& path, DiagramFormat format) {
  const auto pairs = sorted_pairs(diagram);
  if (format == DiagramFormat::Csv) {
    std::string out =
        "class,birth_vertex_x,birth_vertex_y,birth_vertex_z,"
        "death_vertex_x,death_vertex_y,death_vertex_z,birth,death,persistence\n";
    for (const PersistencePair& p : pairs) {
      const Coords b = decode_g0(p.birth_vertex, samples);
      const Coords d = decode_g0(p.death_vertex, samples);
      out += to_string(p.cls);
      for (Index x : b) out += "," + std::to_string(x);
      for (Index x : d) out += "," + std::to_string(x);
      out += "," + fmt17(p.birth_value) + "," + fmt17(p.death_value) + "," +
             fmt17(p.persistence()) + "\n";
    }
    write_file_atomic(path, out);
    return;
  }
  nlohmann::json j;
  j["level"] = diagram.level;
  auto& arr = j["pairs"] = nlohmann::json::array();
  for (const PersistencePair& p : pairs) {
    const Coords b = decode_g0(p.birth_vertex, samples);
    const Coords d = decode_g0(p.death_vertex, samples);
    arr.push_back({{"class", to_string(p.cls)},
                   {"birth_vertex", {b[0], b[1], b[2]}},
                   {"death_vertex", {d[0], d[1], d[2]}},
                   {"birth", p.birth_value},
                   {"death", p.death_value},
                   {"persistence", p.persistence()}});
  }
  write_file_atomic(path, j.dump(2) + "\n");
}

PersistenceDiagram read_diagram(const std::string& path, const Coords& samples,
                                DiagramFormat format) {
  PersistenceDiagram diagram;
  if (format == DiagramFormat::Csv) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::stringstream ss(line);
      std::string tok;
      PersistencePair p;
      std::getline(ss, tok, ',');
      p.cls = parse_class(tok);
      Coords b{}, d{};
      for (int a = 0; a < 3; ++a) {
        std::getline(ss, tok, ',');
        b[a] = std::stoll(tok);
      }
      for (int a = 0; a < 3; ++a) {
        std::getline(ss, tok, ',');
        d[a] = std::stoll(tok);
      }
      p.birth_vertex = encode_g0(b, samples);
      p.death_vertex = encode_g0(d, samples);
      std::getline(ss, tok, ',');
      p.birth_value = std::stod(tok);
      std::getline(ss, tok, ',');
      p.death_value = std::stod(tok);
      diagram.pairs.push_back(p);
    }
    return diagram;
  }
  nlohmann::json j = nlohmann::json::parse(read_file(path));
  diagram.level = j.value("level", 0);
  for (const auto& e : j.at("pairs")) {
    PersistencePair p;
    p.cls = parse_class(e.at("class").get<std::string>());
    Coords b{}, d{};
    for (int a = 0; a < 3; ++a) {
      b[a] = e.at("birth_vertex").at(a).get<Index>();
      d[a] = e.at("death_vertex").at(a).get<Index>();
    }
    p.birth_vertex = encode_g0(b, samples);
    p.death_vertex = encode_g0(d, samples);
    p.birth_value = e.at("birth").get<double>();
    p.death_value = e.at("death").get<double>();
    diagram.pairs.push_back(p);
  }
  return diagram;
}

void write_critical_points(const ProgressiveState& state,
                           const std::string& path) {
  const Coords samples = state.field().samples;
  std::string out = "x,y,z,value,type,lower_components,upper_components\n";
  for (Index v = 0; v < state.vertex_count(); ++v) {
    const CriticalType t = state.type(v);
    if (t.kind == CritKind::Regular) continue;
    const Coords c = decode_g0(state.g0(v), samples);
    out += std::to_string(c[0]) + "," + std::to_string(c[1]) + "," +
           std::to_string(c[2]) + "," + fmt17(state.value(v)) + "," +
           to_string(t.kind) + "," + std::to_string(t.lower) + "," +
           std::to_string(t.upper) + "\n";
  }
  write_file_atomic(path, out);
}

void write_convergence_report(const std::vector<ConvergenceRow>& rows,
                              const std::string& path) {
  std::string out = "level,elapsed_ms,normalized_W2,sig_ratio,avg_persistence_ratio\n";
  for (const ConvergenceRow& r : rows) {
    out += std::to_string(r.level) + "," + fmt17(r.elapsed_ms) + "," +
           fmt17(r.normalized_w2) + "," + fmt17(r.sig_ratio) + "," +
           (r.sig_defined ? fmt17(r.avg_persistence_ratio) : std::string("nan")) +
           "\n";
  }
  write_file_atomic(path, out);
}

void write_tracks(const std::vector<ExtremumTrack>& tracks,
                  const ScalarField& field, const std::string& path) {
  std::string out = "track,level,x,y,z,value,l_a,l_d\n";
  for (const ExtremumTrack& t : tracks) {
    for (const auto& [level, c] : t.trajectory) {
      const Index g0 = encode_g0(c, field.samples);
      out += std::to_string(t.id) + "," + std::to_string(level) + "," +
             std::to_string(c[0]) + "," + std::to_string(c[1]) + "," +
             std::to_string(c[2]) + "," + fmt17(field.values[g0]) + "," +
             std::to_string(t.appeared) + "," + std::to_string(t.disappeared) +
             "\n";
    }
  }
  write_file_atomic(path, out);
}

}  // namespace ptopo
