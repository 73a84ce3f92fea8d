/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "hubo/instance_io.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace hubo {

namespace {

struct Row {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

struct Section {
  std::map<std::string, std::pair<std::size_t, std::string>> keys;
  std::vector<Row> rows;
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos)
    return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::map<std::string, Section> parse_sections(std::istream& in) {
  std::map<std::string, Section> sections;
  Section* current = nullptr;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty())
      continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError("line " + std::to_string(line_no) + ": unterminated section header");
      current = &sections[trim(line.substr(1, line.size() - 2))];
      continue;
    }
    if (current == nullptr)
      throw ParseError("line " + std::to_string(line_no) + ": content before first section");
    const auto eq = line.find('=');
    if (eq != std::string::npos) {
      current->keys[trim(line.substr(0, eq))] = {line_no, trim(line.substr(eq + 1))};
      continue;
    }
    Row row{line_no, {}};
    std::istringstream fields(line);
    for (std::string f; fields >> f;)
      row.fields.push_back(f);
    current->rows.push_back(std::move(row));
  }
  return sections;
}

double to_double(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size())
      throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": expected a number, got '" + text + "'");
  }
}

std::size_t to_index(const std::string& text, std::size_t line) {
  const double value = to_double(text, line);
  if (value < 0 || value != static_cast<double>(static_cast<std::size_t>(value)))
    throw ParseError("line " + std::to_string(line) + ": expected a non-negative integer, got '" +
                     text + "'");
  return static_cast<std::size_t>(value);
}

std::vector<double> to_doubles(const std::string& text, std::size_t line) {
  std::vector<double> out;
  std::istringstream fields(text);
  for (std::string f; fields >> f;)
    out.push_back(to_double(f, line));
  return out;
}

const Section* find(const std::map<std::string, Section>& sections, const std::string& name) {
  auto it = sections.find(name);
  return it == sections.end() ? nullptr : &it->second;
}

std::optional<std::pair<std::size_t, std::string>> key(const Section* section,
                                                       const std::string& name) {
  if (section == nullptr)
    return std::nullopt;
  auto it = section->keys.find(name);
  if (it == section->keys.end())
    return std::nullopt;
  return it->second;
}

std::pair<std::size_t, std::string> required_key(const Section* section,
                                                 const std::string& section_name,
                                                 const std::string& name) {
  auto value = key(section, name);
  if (!value)
    throw ParseError("missing '" + name + "' in [" + section_name + "]");
  return *value;
}

void expect_fields(const Row& row, std::size_t count, const std::string& section) {
  if (row.fields.size() != count)
    throw ParseError("line " + std::to_string(row.line) + ": [" + section + "] rows need " +
                     std::to_string(count) + " fields, got " + std::to_string(row.fields.size()));
}

double meta_lambda(const Section* meta) {
  auto value = key(meta, "lambda");
  return value ? to_double(value->second, value->first) : 0.0;
}

// Converts InvalidArgument from the builders into a ParseError with context.
template <class F>
auto with_context(std::size_t line, F&& f) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    throw ParseError("line " + std::to_string(line) + ": " + e.what());
  }
}

CopInstance read_cop(const std::map<std::string, Section>& sections) {
  const Section* meta = find(sections, "meta");
  const auto [n_line, n_text] = required_key(meta, "meta", "n");
  const auto [m_line, m_text] = required_key(meta, "meta", "m");
  CopInstance inst = with_context(m_line, [&] {
    return CopInstance(to_index(n_text, n_line), to_index(m_text, m_line));
  });
  if (auto c = key(meta, "constant"))
    inst.add_constant(to_double(c->second, c->first));
  if (auto text = key(meta, "metadata"))
    inst.set_metadata(text->second);
  if (const Section* s = find(sections, "linear"))
    for (const auto& row : s->rows) {
      expect_fields(row, 3, "linear");
      with_context(row.line, [&] {
        inst.add_linear(to_index(row.fields[0], row.line),
                        static_cast<std::uint32_t>(to_index(row.fields[1], row.line)),
                        to_double(row.fields[2], row.line));
        return 0;
      });
    }
  if (const Section* s = find(sections, "quadratic"))
    for (const auto& row : s->rows) {
      expect_fields(row, 5, "quadratic");
      with_context(row.line, [&] {
        inst.add_quadratic(to_index(row.fields[0], row.line), to_index(row.fields[1], row.line),
                           static_cast<std::uint32_t>(to_index(row.fields[2], row.line)),
                           static_cast<std::uint32_t>(to_index(row.fields[3], row.line)),
                           to_double(row.fields[4], row.line));
        return 0;
      });
    }
  if (const Section* s = find(sections, "constraints"))
    for (const auto& row : s->rows) {
      Constraint c;
      if (row.fields.size() == 3) {
        c.i = to_index(row.fields[0], row.line);
        c.v = static_cast<std::uint32_t>(to_index(row.fields[1], row.line));
        c.lambda = to_double(row.fields[2], row.line);
      } else {
        expect_fields(row, 5, "constraints");
        c.i = to_index(row.fields[0], row.line);
        c.j = to_index(row.fields[1], row.line);
        c.v = static_cast<std::uint32_t>(to_index(row.fields[2], row.line));
        c.w = static_cast<std::uint32_t>(to_index(row.fields[3], row.line));
        c.lambda = to_double(row.fields[4], row.line);
      }
      with_context(row.line, [&] {
        inst.add_constraint(c);
        return 0;
      });
    }
  if (auto infeasible = key(meta, "infeasible_penalty"))
    inst.mark_infeasible(to_double(infeasible->second, infeasible->first));
  if (const Section* s = find(sections, "labels")) {
    std::vector<std::string> labels(inst.num_values());
    for (const auto& row : s->rows) {
      if (row.fields.size() < 2)
        throw ParseError("line " + std::to_string(row.line) + ": [labels] rows need 'v label'");
      const std::size_t v = to_index(row.fields[0], row.line);
      if (v >= labels.size())
        throw ParseError("line " + std::to_string(row.line) + ": label index out of range");
      std::string text = row.fields[1];
      for (std::size_t k = 2; k < row.fields.size(); ++k)
        text += " " + row.fields[k];
      labels[v] = text;
    }
    inst.set_value_labels(std::move(labels));
  }
  return inst;
}

GapData read_gap(const std::map<std::string, Section>& sections) {
  GapData data;
  const Section* gates = find(sections, "gates");
  {
    const auto [line, text] = required_key(gates, "gates", "walk_arr");
    data.walk_arr = to_doubles(text, line);
  }
  {
    const auto [line, text] = required_key(gates, "gates", "walk_dep");
    data.walk_dep = to_doubles(text, line);
  }
  if (const Section* s = find(sections, "walk_trans"))
    for (const auto& row : s->rows) {
      std::vector<double> values;
      for (const auto& f : row.fields)
        values.push_back(to_double(f, row.line));
      data.walk_trans.push_back(std::move(values));
    }
  if (const Section* s = find(sections, "flights")) {
    std::map<std::size_t, std::pair<double, double>> flights;
    for (const auto& row : s->rows) {
      expect_fields(row, 3, "flights");
      flights[to_index(row.fields[0], row.line)] = {to_double(row.fields[1], row.line),
                                                    to_double(row.fields[2], row.line)};
    }
    std::size_t expected = 0;
    for (const auto& [index, counts] : flights) {
      if (index != expected++)
        throw ParseError("[flights] indices must be 0..n-1 without gaps");
      data.passengers_arr.push_back(counts.first);
      data.passengers_dep.push_back(counts.second);
    }
  }
  if (const Section* s = find(sections, "transfers"))
    for (const auto& row : s->rows) {
      expect_fields(row, 3, "transfers");
      std::size_t i = to_index(row.fields[0], row.line);
      std::size_t j = to_index(row.fields[1], row.line);
      if (i > j)
        std::swap(i, j);
      data.transfers[{i, j}] += to_double(row.fields[2], row.line);
    }
  if (const Section* s = find(sections, "conflicts"))
    for (const auto& row : s->rows) {
      expect_fields(row, 2, "conflicts");
      data.conflicts.emplace_back(to_index(row.fields[0], row.line),
                                  to_index(row.fields[1], row.line));
    }
  try {
    data.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
  return data;
}

CopInstance read_mkcs(const std::map<std::string, Section>& sections) {
  const Section* meta = find(sections, "meta");
  const auto [v_line, v_text] = required_key(meta, "meta", "vertices");
  const auto [k_line, k_text] = required_key(meta, "meta", "colors");
  std::vector<VariablePair> edges;
  std::size_t line = v_line;
  if (const Section* s = find(sections, "edges"))
    for (const auto& row : s->rows) {
      expect_fields(row, 2, "edges");
      edges.emplace_back(to_index(row.fields[0], row.line), to_index(row.fields[1], row.line));
      line = row.line;
    }
  return with_context(line, [&] {
    return mkcs_instance(edges, to_index(v_text, v_line), to_index(k_text, k_line));
  });
}

CopInstance read_ip(const std::map<std::string, Section>& sections) {
  const Section* meta = find(sections, "meta");
  const auto [d_line, d_text] = required_key(meta, "meta", "domain");
  std::vector<long> domain;
  for (double y : to_doubles(d_text, d_line)) {
    if (y != static_cast<double>(static_cast<long>(y)))
      throw ParseError("line " + std::to_string(d_line) + ": domain values must be integers");
    domain.push_back(static_cast<long>(y));
  }
  std::vector<double> q;
  if (const Section* s = find(sections, "q"))
    for (const auto& row : s->rows)
      for (const auto& f : row.fields)
        q.push_back(to_double(f, row.line));
  std::vector<std::vector<double>> Q;
  if (const Section* s = find(sections, "Q"))
    for (const auto& row : s->rows) {
      std::vector<double> values;
      for (const auto& f : row.fields)
        values.push_back(to_double(f, row.line));
      Q.push_back(std::move(values));
    }
  if (Q.empty())
    Q.assign(q.size(), std::vector<double>(q.size(), 0.0));
  std::vector<Constraint> violations;
  if (const Section* s = find(sections, "violations"))
    for (const auto& row : s->rows) {
      expect_fields(row, 4, "violations");
      violations.push_back(Constraint{to_index(row.fields[0], row.line),
                                      to_index(row.fields[1], row.line),
                                      static_cast<std::uint32_t>(to_index(row.fields[2], row.line)),
                                      static_cast<std::uint32_t>(to_index(row.fields[3], row.line)),
                                      0.0});
    }
  return with_context(d_line, [&] { return ip_instance(q, Q, domain, violations, meta_lambda(meta)); });
}

std::ostream& full_precision(std::ostream& out) {
  return out << std::setprecision(17);
}

} // namespace

CopInstance read_instance(std::istream& in) {
  const auto sections = parse_sections(in);
  const Section* meta = find(sections, "meta");
  const auto type = key(meta, "type");
  const std::string kind = type ? type->second : "cop";
  if (kind == "cop")
    return read_cop(sections);
  if (kind == "gap") {
    GapData data = read_gap(sections);
    return gap_instance(data, meta_lambda(meta));
  }
  if (kind == "mkcs")
    return read_mkcs(sections);
  if (kind == "ip")
    return read_ip(sections);
  throw ParseError("unknown instance type '" + kind + "'");
}

CopInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open instance file '" + path + "'");
  return read_instance(in);
}

void write_instance(std::ostream& out, const CopInstance& inst) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  full_precision(out);
  const std::size_t n = inst.num_variables();
  const std::size_t m = inst.num_values();
  out << "[meta]\ntype = cop\nn = " << n << "\nm = " << m
      << "\nconstant = " << inst.objective_constant() << "\n";
  if (!inst.metadata().empty())
    out << "metadata = " << inst.metadata() << "\n";
  if (inst.trivially_infeasible())
    out << "infeasible_penalty = " << inst.constant() - inst.objective_constant() << "\n";
  out << "\n[linear]\n";
  for (std::size_t i = 0; i < n; ++i)
    for (std::uint32_t v = 0; v < m; ++v)
      if (const double c = inst.objective_linear(i, v); c != 0.0)
        out << i << " " << v << " " << c << "\n";
  out << "\n[quadratic]\n";
  for (const auto& [i, j] : inst.coupled_pairs())
    for (std::uint32_t v = 0; v < m; ++v)
      for (std::uint32_t w = 0; w < m; ++w)
        if (const double c = inst.objective_quadratic(i, j, v, w); c != 0.0)
          out << i << " " << j << " " << v << " " << w << " " << c << "\n";
  out << "\n[constraints]\n";
  for (const auto& c : inst.constraints()) {
    if (c.unary())
      out << c.i << " " << c.v << " " << c.lambda << "\n";
    else
      out << c.i << " " << c.j << " " << c.v << " " << c.w << " " << c.lambda << "\n";
  }
  if (!inst.value_labels().empty()) {
    out << "\n[labels]\n";
    for (std::size_t v = 0; v < m; ++v)
      out << v << " " << inst.value_labels()[v] << "\n";
  }
  out.flags(flags);
  out.precision(precision);
}

void save_instance(const std::string& path, const CopInstance& instance) {
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot write instance file '" + path + "'");
  write_instance(out, instance);
}

std::uint64_t instance_hash(const CopInstance& instance) {
  std::ostringstream text;
  write_instance(text, instance);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text.str()) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

GapData read_gap_data(std::istream& in) {
  return read_gap(parse_sections(in));
}

void write_gap_data(std::ostream& out, const GapData& data, double lambda) {
  full_precision(out);
  out << "[meta]\ntype = gap\n";
  if (lambda > 0.0)
    out << "lambda = " << lambda << "\n";
  out << "\n[gates]\nwalk_arr =";
  for (double t : data.walk_arr)
    out << " " << t;
  out << "\nwalk_dep =";
  for (double t : data.walk_dep)
    out << " " << t;
  out << "\n\n[walk_trans]\n";
  for (const auto& row : data.walk_trans) {
    for (std::size_t k = 0; k < row.size(); ++k)
      out << (k ? " " : "") << row[k];
    out << "\n";
  }
  out << "\n[flights]   # flight arr dep\n";
  for (std::size_t i = 0; i < data.num_flights(); ++i)
    out << i << " " << data.passengers_arr[i] << " " << data.passengers_dep[i] << "\n";
  out << "\n[transfers] # i j passengers\n";
  for (const auto& [key, count] : data.transfers)
    out << key.first << " " << key.second << " " << count << "\n";
  out << "\n[conflicts]\n";
  for (const auto& [i, j] : data.conflicts)
    out << i << " " << j << "\n";
}

} // namespace hubo
