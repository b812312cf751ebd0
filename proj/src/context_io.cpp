#include <charconv>
#include <fstream>
#include <sstream>

#include "fca/context.hpp"
#include "fca/errors.hpp"
#include "text_util.hpp"

namespace fca {
namespace {

std::size_t parse_count(const std::string& line, const char* what) {
  const auto t = detail::trim(line);
  std::size_t v = 0;
  const auto* end = t.data() + t.size();
  auto [p, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || p != end)
    throw ParseError(std::string("CXT: bad ") + what + " count '" + line + "'");
  return v;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return in;
}

}  // namespace

FormalContext read_cxt(std::istream& in) {
  std::string line;
  if (!detail::read_line(in, line) || detail::trim(line) != "B")
    throw ParseError("CXT: first line must be 'B'");
  // Line 2 conventionally empty; some writers put a context name there.
  if (!detail::read_line(in, line)) throw ParseError("CXT: truncated header");
  if (!detail::read_line(in, line)) throw ParseError("CXT: missing object count");
  const std::size_t n_obj = parse_count(line, "object");
  if (!detail::read_line(in, line)) throw ParseError("CXT: missing attribute count");
  const std::size_t n_att = parse_count(line, "attribute");
  if (!detail::read_line(in, line) || !detail::trim(line).empty())
    throw ParseError("CXT: expected empty line after counts");

  std::vector<std::string> objects(n_obj), attributes(n_att);
  for (auto& name : objects)
    if (!detail::read_line(in, name)) throw ParseError("CXT: truncated object names");
  for (auto& name : attributes)
    if (!detail::read_line(in, name)) throw ParseError("CXT: truncated attribute names");

  std::vector<AttributeSet> rows;
  rows.reserve(n_obj);
  for (std::size_t g = 0; g < n_obj; ++g) {
    if (!detail::read_line(in, line)) throw ParseError("CXT: truncated incidence matrix");
    if (line.size() != n_att)
      throw ParseError("CXT: row " + std::to_string(g + 1) + " has " + std::to_string(line.size()) +
                       " cells, expected " + std::to_string(n_att));
    AttributeSet row(n_att);
    for (std::size_t m = 0; m < n_att; ++m) {
      const char c = line[m];
      if (c == 'X' || c == 'x')
        row.insert(m);
      else if (c != '.')
        throw ParseError("CXT: row " + std::to_string(g + 1) + " has invalid cell '" +
                         std::string(1, c) + "'");
    }
    rows.push_back(std::move(row));
  }
  while (detail::read_line(in, line))
    if (!detail::trim(line).empty()) throw ParseError("CXT: trailing content after incidence matrix");

  return FormalContext(std::move(objects), std::move(attributes), std::move(rows));
}

FormalContext read_cxt_file(const std::string& path) {
  auto in = open_input(path);
  return read_cxt(in);
}

void write_cxt(std::ostream& out, const FormalContext& ctx) {
  out << "B\n\n" << ctx.num_objects() << '\n' << ctx.num_attributes() << "\n\n";
  for (const auto& n : ctx.object_names()) out << n << '\n';
  for (const auto& n : ctx.attribute_names()) out << n << '\n';
  std::string line(ctx.num_attributes(), '.');
  for (std::size_t g = 0; g < ctx.num_objects(); ++g) {
    for (std::size_t m = 0; m < ctx.num_attributes(); ++m) line[m] = ctx.incident(g, m) ? 'X' : '.';
    out << line << '\n';
  }
}

std::string to_cxt(const FormalContext& ctx) {
  std::ostringstream os;
  write_cxt(os, ctx);
  return os.str();
}

FormalContext read_csv_context(std::istream& in) {
  std::string line;
  if (!detail::read_line(in, line)) throw ParseError("CSV: missing header row");
  auto header = detail::split_csv(line);
  if (header.empty()) throw ParseError("CSV: empty header row");
  std::vector<std::string> attributes(header.begin() + 1, header.end());
  for (auto& a : attributes) a = std::string(detail::trim(a));

  std::vector<std::string> objects;
  std::vector<AttributeSet> rows;
  std::size_t lineno = 1;
  while (detail::read_line(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    auto cells = detail::split_csv(line);
    if (cells.size() != attributes.size() + 1)
      throw ParseError("CSV: line " + std::to_string(lineno) + " has " + std::to_string(cells.size()) +
                       " cells, expected " + std::to_string(attributes.size() + 1));
    AttributeSet row(attributes.size());
    for (std::size_t m = 0; m < attributes.size(); ++m) {
      const auto v = detail::trim(cells[m + 1]);
      if (v == "1")
        row.insert(m);
      else if (v != "0")
        throw ParseError("CSV: line " + std::to_string(lineno) + " has non-binary cell '" +
                         std::string(v) + "'");
    }
    objects.emplace_back(detail::trim(cells[0]));
    rows.push_back(std::move(row));
  }
  return FormalContext(std::move(objects), std::move(attributes), std::move(rows));
}

FormalContext read_context_file(const std::string& path) {
  auto in = open_input(path);
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) return read_csv_context(in);
  return read_cxt(in);
}

}  // namespace fca
