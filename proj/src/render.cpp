#include "qfano/render.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace qfano {

using nlohmann::json;

OutputFormat parse_format(std::string_view name) {
  if (name == "table") return OutputFormat::table;
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw Error(ErrorKind::input, "unknown output format: '" + std::string(name) + "' (expected table, json or csv)");
}

std::string join_ints(const std::vector<Int>& values, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

namespace {

std::vector<Int> table_dims(const FanoCandidate& c) {
  std::vector<Int> dims;
  for (Int k = 1; k < c.q && k < static_cast<Int>(c.hilbert_row.size()); ++k)
    dims.push_back(c.hilbert_row[static_cast<std::size_t>(k)] - 1);
  return dims;
}

json basket_json(const Basket& b) {
  json arr = json::array();
  for (const auto& p : b.points) arr.push_back({p.r, p.b, p.multiplicity});
  return arr;
}

json row_json(const SearchRow& row) {
  const auto& c = row.candidate;
  json j;
  j["q"] = c.q;
  j["basket"] = basket_json(c.basket);
  j["A3"] = to_string(c.A3);
  j["g"] = c.genus;
  j["dims"] = table_dims(c);
  j["torsion_order"] = c.torsion_order;
  j["hilbert"] = c.hilbert_row;
  if (!row.torsion_witness.empty()) j["torsion_witness"] = row.torsion_witness;
  if (!row.torsion_classes_row.empty()) j["torsion_classes_row"] = row.torsion_classes_row;
  return j;
}

SearchRow row_from_json(const json& j) {
  SearchRow row;
  auto& c = row.candidate;
  c.q = j.at("q").get<Int>();
  std::vector<BasketPoint> pts;
  for (const auto& p : j.at("basket")) pts.push_back({p.at(0).get<Int>(), p.at(1).get<Int>(), p.at(2).get<Int>()});
  c.basket = make_basket(std::move(pts));
  c.A3 = parse_rational(j.at("A3").get<std::string>());
  c.genus = j.at("g").get<Int>();
  c.torsion_order = j.value("torsion_order", Int{1});
  c.hilbert_row = j.at("hilbert").get<std::vector<Int>>();
  row.torsion_witness = j.value("torsion_witness", std::vector<Int>{});
  row.torsion_classes_row = j.value("torsion_classes_row", std::vector<Int>{});
  return row;
}

std::string render_table(const std::vector<SearchRow>& rows) {
  std::size_t ndims = 0;
  for (const auto& r : rows) ndims = std::max(ndims, table_dims(r.candidate).size());
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head{"#", "A^3", "B", "g"};
  for (std::size_t k = 1; k <= ndims; ++k) head.push_back(std::to_string(k));
  cells.push_back(head);
  Int n = 0;
  for (const auto& r : rows) {
    const auto& c = r.candidate;
    std::vector<std::string> line{std::to_string(++n), to_string(c.A3), format_indices(c.basket), std::to_string(c.genus)};
    for (Int d : table_dims(c)) line.push_back(std::to_string(d));
    line.resize(head.size());
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(head.size(), 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  std::ostringstream os;
  for (const auto& line : cells) {
    std::string text;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) text += " | ";
      // indices left-aligned, numbers right-aligned
      const bool left = i == 1 || i == 2;
      auto pad = std::string(width[i] - line[i].size(), ' ');
      text += left ? line[i] + pad : pad + line[i];
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    os << text << "\n";
  }
  return os.str();
}

std::string render_csv(const std::vector<SearchRow>& rows) {
  std::ostringstream os;
  os << "q,A3,basket,b,g,dims,torsion_order\n";
  for (const auto& r : rows) {
    const auto& c = r.candidate;
    std::vector<Int> bs;
    for (const auto& p : c.basket.points)
      for (Int i = 0; i < p.multiplicity; ++i) bs.push_back(p.b);
    os << c.q << "," << to_string(c.A3) << ",\"" << format_indices(c.basket) << "\"," << join_ints(bs, " ") << ","
       << c.genus << "," << join_ints(table_dims(c), " ") << "," << c.torsion_order << "\n";
  }
  return os.str();
}

}  // namespace

std::string render_rows(const std::vector<SearchRow>& rows, OutputFormat format) {
  switch (format) {
    case OutputFormat::table:
      return render_table(rows);
    case OutputFormat::csv:
      return render_csv(rows);
    case OutputFormat::json: {
      json arr = json::array();
      for (const auto& r : rows) arr.push_back(row_json(r));
      return arr.dump(2) + "\n";
    }
  }
  return {};
}

std::string render_result(const SearchResult& result, OutputFormat format) {
  if (format != OutputFormat::json) {
    std::string out = render_rows(result.rows, format);
    if (format == OutputFormat::table)
      for (const auto& rej : result.rejected)
        out += "rejected " + format_indices(rej.basket) + " A^3=" + to_string(rej.A3) + ": " + rej.reason.filter +
               (rej.reason.m ? " at m=" + std::to_string(*rej.reason.m) : std::string()) +
               (rej.reason.detail.empty() ? std::string() : " (" + rej.reason.detail + ")") + "\n";
    return out;
  }
  json j;
  j["q"] = result.config.q;
  j["torsion_order"] = result.config.torsion_order;
  j["rows"] = json::array();
  for (const auto& r : result.rows) j["rows"].push_back(row_json(r));
  if (!result.rejected.empty()) {
    j["rejected"] = json::array();
    for (const auto& rej : result.rejected) {
      json e{{"basket", basket_json(rej.basket)}, {"A3", to_string(rej.A3)}, {"filter", rej.reason.filter}};
      if (rej.reason.m) e["m"] = *rej.reason.m;
      if (!rej.reason.detail.empty()) e["detail"] = rej.reason.detail;
      j["rejected"].push_back(std::move(e));
    }
  }
  return j.dump(2) + "\n";
}

std::vector<SearchRow> parse_rows_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::input, std::string("malformed JSON: ") + ex.what());
  }
  const json& arr = j.is_object() ? j.at("rows") : j;
  std::vector<SearchRow> rows;
  try {
    for (const auto& r : arr) rows.push_back(row_from_json(r));
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::input, std::string("malformed search row: ") + ex.what());
  }
  return rows;
}

}  // namespace qfano
