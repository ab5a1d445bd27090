#include "adwords/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "adwords/errors.hpp"

namespace adwords {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw ValidationError({what}); }

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail("missing field '" + std::string(key) + "' in " + where);
  return *it;
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail("expected string for " + where);
  return j.get<std::string>();
}

Rational as_money(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
  } catch (const std::exception& e) {
    fail("bad money value for " + where + ": " + e.what());
  }
  fail("money must be a string for " + where);
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail("expected integer for " + where);
  return j.get<int>();
}

int parse_dim_key(const std::string& key, const std::string& where) {
  try {
    std::size_t used = 0;
    const int dim = std::stoi(key, &used);
    if (used != key.size()) throw std::invalid_argument(key);
    return dim;
  } catch (const std::exception&) {
    fail("bad dimension key '" + key + "' in " + where);
  }
}

}  // namespace

Instance parse_instance(const std::string& text, const LoadOptions& options) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("JSON parse error: ") + e.what());
  }
  if (!doc.is_object()) fail("top level must be an object");

  const auto mode = parse_mode(as_string(require(doc, "mode", "instance"), "mode"));
  if (!mode) fail("mode must be 'laminar' or 'general'");
  const int num_dims = as_int(require(doc, "num_dimensions", "instance"), "num_dimensions");

  std::vector<Bidder> bidders;
  const json& jb = require(doc, "bidders", "instance");
  if (!jb.is_array()) fail("bidders must be an array");
  for (const json& b : jb) {
    Bidder bidder;
    bidder.id = as_string(require(b, "id", "bidder"), "bidder id");
    const std::string where = "bidder '" + bidder.id + "'";
    const json& jc = require(b, "constraints", where);
    if (!jc.is_array()) fail("constraints must be an array in " + where);
    for (const json& c : jc) {
      BudgetConstraint con;
      con.id = as_string(require(c, "id", where), "constraint id");
      const std::string cwhere = where + " constraint '" + con.id + "'";
      const json& dims = require(c, "dims", cwhere);
      if (!dims.is_array()) fail("dims must be an array in " + cwhere);
      for (const json& d : dims) con.dims.push_back(as_int(d, cwhere));
      con.budget = as_money(require(c, "budget", cwhere), cwhere);
      bidder.constraints.push_back(std::move(con));
    }
    bidders.push_back(std::move(bidder));
  }

  std::vector<Impression> impressions;
  const json& ji = require(doc, "impressions", "instance");
  if (!ji.is_array()) fail("impressions must be an array");
  for (const json& i : ji) {
    Impression imp;
    imp.id = as_string(require(i, "id", "impression"), "impression id");
    const std::string where = "impression '" + imp.id + "'";
    imp.bids.resize(bidders.size());
    if (auto it = i.find("bids"); it != i.end()) {
      if (!it->is_object()) fail("bids must be an object in " + where);
      for (const auto& [bidder_id, per_dim] : it->items()) {
        std::size_t u = bidders.size();
        for (std::size_t b = 0; b < bidders.size(); ++b) {
          if (bidders[b].id == bidder_id) u = b;
        }
        if (u == bidders.size()) fail("unknown bidder '" + bidder_id + "' in " + where);
        if (!per_dim.is_object()) fail("bids of '" + bidder_id + "' must be an object in " + where);
        for (const auto& [key, value] : per_dim.items()) {
          imp.bids[u].push_back(Bid{parse_dim_key(key, where), as_money(value, where)});
        }
      }
    }
    impressions.push_back(std::move(imp));
  }

  Instance instance(*mode, num_dims, std::move(bidders), std::move(impressions));
  if (auto it = doc.find("meta"); it != doc.end()) {
    if (!it->is_object()) fail("meta must be an object");
    std::map<std::string, std::string> meta;
    for (const auto& [key, value] : it->items()) meta[key] = as_string(value, "meta." + key);
    instance.set_meta(std::move(meta));
  }
  if (instance.mode() == Mode::Laminar && options.synthesize_singletons) {
    instance = synthesize_singletons(instance);
  }
  if (options.validate) {
    if (auto violations = validate(instance); !violations.empty()) {
      throw ValidationError(std::move(violations));
    }
  }
  return instance;
}

Instance load_instance(const std::filesystem::path& path, const LoadOptions& options) {
  return parse_instance(read_text_file(path), options);
}

std::string serialize_instance(const Instance& instance) {
  json doc = json::object();
  doc["mode"] = std::string(to_string(instance.mode()));
  doc["num_dimensions"] = instance.num_dimensions();
  json bidders = json::array();
  for (const Bidder& b : instance.bidders()) {
    json cons = json::array();
    for (const BudgetConstraint& c : b.constraints) {
      cons.push_back({{"id", c.id}, {"dims", c.dims}, {"budget", c.budget.str()}});
    }
    bidders.push_back({{"id", b.id}, {"constraints", std::move(cons)}});
  }
  doc["bidders"] = std::move(bidders);
  json impressions = json::array();
  for (const Impression& imp : instance.impressions()) {
    json bids = json::object();
    for (std::size_t u = 0; u < imp.bids.size() && u < instance.num_bidders(); ++u) {
      if (imp.bids[u].empty()) continue;
      json per_dim = json::object();
      for (const Bid& bid : imp.bids[u]) per_dim[std::to_string(bid.dim)] = bid.value.str();
      bids[instance.bidder(u).id] = std::move(per_dim);
    }
    impressions.push_back({{"id", imp.id}, {"bids", std::move(bids)}});
  }
  doc["impressions"] = std::move(impressions);
  if (!instance.meta().empty()) doc["meta"] = instance.meta();
  return doc.dump(1) + "\n";
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  write_text_file(path, serialize_instance(instance));
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace adwords
