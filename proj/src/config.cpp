#include "todomine/config.hpp"

#include <openssl/evp.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "todomine/errors.hpp"

namespace todomine {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("'" + key + "' must be a non-negative integer, got '" +
                      v + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("'" + key + "' must be a boolean, got '" + v + "'");
}

fs::path resolve(const fs::path& base, const std::string& v) {
  fs::path p{v};
  return p.is_relative() ? (base / p).lexically_normal() : p;
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) !=
      1) {
    throw Error("sha256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0')
        << static_cast<int>(md[i]);
  }
  return hex.str();
}

}  // namespace

PipelineConfig load_config(const fs::path& file) {
  pt::ptree tree;
  try {
    pt::read_ini(file.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(e.what());
  }

  const fs::path base = file.parent_path();
  PipelineConfig cfg;
  for (const auto& [section, body] : tree) {
    if (section != "pipeline" && section != "normalize") {
      throw ConfigError("unknown config section [" + section + "]");
    }
    for (const auto& [key, node] : body) {
      const auto v = node.get_value<std::string>();
      const std::string name = section + "." + key;
      if (section == "pipeline") {
        if (key == "repo_list") {
          cfg.repo_list_path = resolve(base, v);
        } else if (key == "language") {
          try {
            cfg.language = parse_language(v);
          } catch (const Error& e) {
            throw ConfigError(e.what());
          }
        } else if (key == "output_dir") {
          cfg.output_dir = resolve(base, v);
        } else if (key == "seed") {
          cfg.seed = parse_u64(name, v);
        } else if (key == "workers") {
          cfg.worker_count = parse_u64(name, v);
        } else if (key == "strict") {
          cfg.strict_ingest = cfg.strict_diff = parse_bool(name, v);
        } else if (key == "dedup") {
          cfg.dedup = parse_bool(name, v);
        } else {
          throw ConfigError("unknown config key " + name);
        }
      } else {
        auto& n = cfg.normalize;
        if (key == "commit_id_pattern") {
          n.commit_id_pattern = v;
        } else if (key == "issue_id_pattern") {
          n.issue_id_pattern = v;
        } else if (key == "commit_placeholder") {
          n.commit_placeholder = v;
        } else if (key == "issue_placeholder") {
          n.issue_placeholder = v;
        } else if (key == "max_diff_bytes") {
          n.max_diff_bytes = parse_u64(name, v);
        } else {
          throw ConfigError("unknown config key " + name);
        }
      }
    }
  }
  return cfg;
}

void validate(const PipelineConfig& config) {
  if (config.repo_list_path.empty()) throw ConfigError("no repo list given");
  if (config.output_dir.empty()) throw ConfigError("no output directory given");
  if (config.worker_count < 1) throw ConfigError("workers must be at least 1");
  try {
    Normalizer check(config.normalize);
  } catch (const InvalidPattern& e) {
    throw ConfigError(e.what());
  }
}

std::string config_digest(const PipelineConfig& config) {
  std::ifstream in(config.repo_list_path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot read repo list " +
                      config.repo_list_path.string());
  }
  std::ostringstream list_bytes;
  list_bytes << in.rdbuf();

  const auto& n = config.normalize;
  std::ostringstream canon;
  canon << "language=" << (config.language ? to_string(*config.language) : "*")
        << "\nseed=" << config.seed
        << "\nstrict_ingest=" << config.strict_ingest
        << "\nstrict_diff=" << config.strict_diff
        << "\ndedup=" << config.dedup
        << "\ncommit_id_pattern=" << n.commit_id_pattern
        << "\nissue_id_pattern=" << n.issue_id_pattern
        << "\ncommit_placeholder=" << n.commit_placeholder
        << "\nissue_placeholder=" << n.issue_placeholder
        << "\nmax_diff_bytes=" << n.max_diff_bytes
        << "\nrepo_list=" << sha256_hex(list_bytes.str()) << "\n";
  return sha256_hex(canon.str());
}

}  // namespace todomine
