#include "eigenposet/data.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "eigenposet/errors.hpp"

namespace eigenposet {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<TableRow> load_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open degree table " + path.string());
  std::vector<TableRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    std::istringstream tokens(line);
    TableRow row;
    tokens >> row.name;
    std::string tok;
    while (tokens >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) throw ParseError("degree table token without '=': " + tok);
      const std::string key = tok.substr(0, eq);
      const std::string value = tok.substr(eq + 1);
      if (key == "dim") {
        row.dim = std::stoi(value);
      } else if (key == "order") {
        row.order = mpz_class(value);
      } else if (key == "degrees") {
        row.degrees = parse_int_list(value);
      } else if (key == "codegrees") {
        row.codegrees = parse_int_list(value);
      } else if (key == "aliases") {
        std::istringstream parts(value);
        std::string a;
        while (std::getline(parts, a, ',')) row.aliases.push_back(a);
      } else {
        throw ParseError("unknown degree table key " + key);
      }
    }
    if (static_cast<int>(row.degrees.size()) != row.dim || static_cast<int>(row.codegrees.size()) != row.dim) {
      throw ParseError("degree table row " + row.name + " has wrong arity");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("EIGENPOSET_DATA_DIR"); env && *env) return env;
  return EIGENPOSET_DEFAULT_DATA_DIR;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string item;
  std::istringstream parts(text);
  while (std::getline(parts, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw ParseError("bad integer " + item);
    } catch (const std::logic_error&) {
      throw ParseError("bad integer " + item);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

GroupFile parse_group_file(std::istream& in) {
  GroupFile file;
  std::string line;
  std::vector<std::string> block;
  bool in_block = false;
  while (std::getline(in, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    if (in_block) {
      if (line == "end") {
        file.generators.push_back(parse_matrix(block));
        block.clear();
        in_block = false;
      } else {
        block.push_back(line);
      }
      continue;
    }
    if (line == "generator") {
      in_block = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("group file line without '=': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "name") {
      file.name = value;
    } else if (key == "dim") {
      file.dim = std::stol(value);
    } else if (key == "order") {
      file.order = std::stol(value);
    } else if (key == "degrees") {
      file.degrees = parse_int_list(value);
    } else if (key == "codegrees") {
      file.codegrees = parse_int_list(value);
    } else {
      throw ParseError("unknown group file key " + key);
    }
  }
  if (in_block) throw ParseError("generator block without 'end'");
  if (file.dim <= 0) throw ParseError("group file lacks a positive dim");
  for (const auto& g : file.generators) {
    if (g.rows() != file.dim || g.cols() != file.dim) throw ParseError("generator has wrong shape");
  }
  return file;
}

GroupFile read_group_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open group file " + path.string());
  return parse_group_file(in);
}

std::filesystem::path resolve_group_file(const std::string& selector) {
  const std::filesystem::path direct(selector);
  if (std::filesystem::is_regular_file(direct)) return direct;
  for (const auto& candidate : {data_dir() / "groups" / selector, data_dir() / "groups" / (selector + ".grp")}) {
    if (std::filesystem::is_regular_file(candidate)) return candidate;
  }
  throw IoError("no group file for selector " + selector);
}

const std::vector<TableRow>& degree_table() {
  static std::mutex mutex;
  static std::map<std::string, std::vector<TableRow>> cache;
  const std::string path = (data_dir() / "degree_table.txt").string();
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(path);
  if (it == cache.end()) it = cache.emplace(path, load_table(path)).first;
  return it->second;
}

std::optional<TableRow> find_table_row(const std::string& name) {
  for (const auto& row : degree_table()) {
    if (row.name == name) return row;
    if (std::find(row.aliases.begin(), row.aliases.end(), name) != row.aliases.end()) return row;
  }
  return std::nullopt;
}

}  // namespace eigenposet
