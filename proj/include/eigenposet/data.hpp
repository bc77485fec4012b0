#pragma once

// Shipped data: group generator files and the exceptional degree table.
// The data directory is $EIGENPOSET_DATA_DIR when set, else the source tree's data/.

#include <filesystem>
#include <gmpxx.h>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "eigenposet/exactla.hpp"

namespace eigenposet {

std::filesystem::path data_dir();

/// key = value lines, '#' comments, and generator blocks:
///   generator
///   <matrix rows in exactla text format>
///   end
struct GroupFile {
  std::string name;
  Index dim = 0;
  std::vector<Mat> generators;
  std::optional<long> order;
  std::vector<int> degrees;
  std::vector<int> codegrees;
};

GroupFile parse_group_file(std::istream& in);
GroupFile read_group_file(const std::filesystem::path& path);

/// Resolves a group-file selector: an existing path, else <data>/groups/<sel>[.grp].
std::filesystem::path resolve_group_file(const std::string& selector);

struct TableRow {
  std::string name;
  std::vector<std::string> aliases;
  int dim = 0;
  mpz_class order;
  std::vector<int> degrees;
  std::vector<int> codegrees;
};

/// Rows of <data>/degree_table.txt, loaded once per data directory.
const std::vector<TableRow>& degree_table();
std::optional<TableRow> find_table_row(const std::string& name);

std::vector<int> parse_int_list(const std::string& text);

}  // namespace eigenposet
