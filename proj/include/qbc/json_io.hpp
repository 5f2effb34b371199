#ifndef QBC_JSON_IO_HPP
#define QBC_JSON_IO_HPP

#include <fstream>
#include <string>

#include "json.hpp"
#include "qbc/channel.hpp"
#include "qbc/hull.hpp"
#include "qbc/state.hpp"

namespace qbc {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "qbc/1";

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Complex matrices serialize as row-major arrays of [re, im] pairs.
inline json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      data.push_back({m(r, c).real(), m(r, c).imag()});
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

inline Matrix matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw io_error("matrix data length mismatch");
  Matrix m(rows, cols);
  Eigen::Index i = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c, ++i)
      m(r, c) = Complex(data[i][0].get<double>(), data[i][1].get<double>());
  return m;
}

inline json state_to_json(const DensityOperator& rho) {
  return json{{"schema", kSchemaVersion},
              {"type", "state"},
              {"dims", rho.dims()},
              {"labels", rho.labels()},
              {"matrix", matrix_to_json(rho.matrix())}};
}

inline DensityOperator state_from_json(const json& j) {
  if (j.at("schema") != kSchemaVersion) throw io_error("unsupported schema");
  if (j.at("type") != "state") throw io_error("not a state artifact");
  return DensityOperator(matrix_from_json(j.at("matrix")),
                         j.at("dims").get<std::vector<int>>(),
                         j.at("labels").get<std::vector<std::string>>());
}

inline json channel_to_json(const QuantumChannel& ch) {
  json kraus = json::array();
  for (const auto& k : ch.kraus) kraus.push_back(matrix_to_json(k));
  return json{{"schema", kSchemaVersion}, {"type", "channel"},
              {"in_dims", ch.in_dims},   {"out_dims", ch.out_dims},
              {"in_labels", ch.in_labels}, {"out_labels", ch.out_labels},
              {"kraus", kraus}};
}

inline QuantumChannel channel_from_json(const json& j) {
  if (j.at("schema") != kSchemaVersion) throw io_error("unsupported schema");
  if (j.at("type") != "channel") throw io_error("not a channel artifact");
  QuantumChannel ch;
  ch.in_dims = j.at("in_dims").get<std::vector<int>>();
  ch.out_dims = j.at("out_dims").get<std::vector<int>>();
  ch.in_labels = j.at("in_labels").get<std::vector<std::string>>();
  ch.out_labels = j.at("out_labels").get<std::vector<std::string>>();
  for (const auto& k : j.at("kraus")) ch.kraus.push_back(matrix_from_json(k));
  ch.validate();
  return ch;
}

inline json broadcast_to_json(const BroadcastChannel& bc) {
  json j{{"schema", kSchemaVersion},
         {"type", "broadcast_channel"},
         {"kind", bc.kind},
         {"params", bc.params},
         {"is_classical", bc.is_classical},
         {"is_hadamard", bc.is_hadamard},
         {"channel", channel_to_json(bc.channel)}};
  if (bc.is_classical) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < bc.kernel.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < bc.kernel.cols(); ++c) row.push_back(bc.kernel(r, c));
      rows.push_back(row);
    }
    j["kernel"] = rows;
    j["ny1"] = bc.ny1;
    j["ny2"] = bc.ny2;
  }
  if (bc.known_degrading) j["degrading"] = channel_to_json(*bc.known_degrading);
  return j;
}

inline BroadcastChannel broadcast_from_json(const json& j) {
  if (j.at("schema") != kSchemaVersion) throw io_error("unsupported schema");
  if (j.at("type") != "broadcast_channel") throw io_error("not a broadcast artifact");
  BroadcastChannel bc = make_broadcast(channel_from_json(j.at("channel")));
  bc.kind = j.value("kind", "generic");
  bc.params = j.value("params", std::vector<double>{});
  bc.is_classical = j.value("is_classical", false);
  bc.is_hadamard = j.value("is_hadamard", false);
  if (j.contains("kernel")) {
    const auto& rows = j.at("kernel");
    bc.ny1 = j.at("ny1").get<int>();
    bc.ny2 = j.at("ny2").get<int>();
    bc.kernel.resize(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows[r].size(); ++c)
        bc.kernel(r, c) = rows[r][c].get<double>();
  }
  if (j.contains("degrading")) bc.known_degrading = channel_from_json(j.at("degrading"));
  return bc;
}

inline void save_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open for write: " + path);
  out << j.dump(2) << "\n";
}

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open: " + path);
  return json::parse(in);
}

inline void save_hull_csv(const std::vector<Point2>& hull, const std::string& path,
                          const std::string& header = "r0,r1") {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open for write: " + path);
  out << header << "\n";
  for (const auto& p : hull) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", p[0], p[1]);
    out << buf;
  }
}

}  // namespace qbc

#endif  // QBC_JSON_IO_HPP
