#include "lhg/graph_store.hpp"

#include <stdexcept>

#include "lhg/lg_store.hpp"
#include "lhg/lhg_store.hpp"
#include "lhg/oracle_store.hpp"

namespace lhg {

const char* to_string(StoreKind kind) {
  switch (kind) {
    case StoreKind::Lhg:
      return "lhg";
    case StoreKind::Lg:
      return "lg";
    case StoreKind::Oracle:
      return "oracle";
  }
  return "?";
}

StoreKind parse_store_kind(const std::string& name) {
  if (name == "lhg") return StoreKind::Lhg;
  if (name == "lg") return StoreKind::Lg;
  if (name == "oracle") return StoreKind::Oracle;
  throw std::invalid_argument("unknown store kind: " + name +
                              " (expected lhg, lg or oracle)");
}

std::vector<std::pair<uint64_t, double>> GraphStore::neighbors(
    uint64_t u) const {
  std::vector<std::pair<uint64_t, double>> out;
  for_each_neighbor(u, [&](uint64_t v, double w) { out.emplace_back(v, w); });
  return out;
}

std::vector<uint64_t> GraphStore::vertex_ids() const {
  std::vector<uint64_t> out;
  for_each_vertex([&](uint64_t u) { out.push_back(u); });
  return out;
}

std::unique_ptr<GraphStore> make_store(StoreKind kind, const StoreConfig& cfg) {
  switch (kind) {
    case StoreKind::Lhg:
      return std::make_unique<LhgStore>(cfg);
    case StoreKind::Lg:
      return std::make_unique<LgStore>(cfg);
    case StoreKind::Oracle:
      return std::make_unique<OracleStore>();
  }
  throw std::invalid_argument("unknown store kind");
}

}  // namespace lhg
