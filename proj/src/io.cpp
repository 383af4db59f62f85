#include "pampa/io.hpp"

#include "pampa/state.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace pampa {

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

double parse_number(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  while (first < last && *first == ' ') ++first;
  if (first < last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, delim)) out.push_back(cur);
  if (!line.empty() && line.back() == delim) out.emplace_back();
  return out;
}

}  // namespace

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path), columns_(header.size()) {
  if (!out_) throw ConfigError("cannot write '" + path.string() + "'");
  for (std::size_t k = 0; k < header.size(); ++k) out_ << (k ? "," : "") << header[k];
  out_ << '\n';
}

void CsvWriter::sep() {
  if (in_row_ == columns_) throw InvariantViolation("CSV row has too many values");
  if (in_row_++ > 0) out_ << ',';
}

CsvWriter& CsvWriter::operator<<(double v) {
  sep();
  out_ << format_number(v);
  return *this;
}

CsvWriter& CsvWriter::operator<<(long long v) {
  sep();
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out_.write(buf, res.ptr - buf);
  return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& s) {
  sep();
  out_ << s;
  return *this;
}

void CsvWriter::end_row() {
  if (in_row_ != columns_) throw InvariantViolation("CSV row is incomplete");
  out_ << '\n';
  in_row_ = 0;
}

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ConfigError("CSV has no column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

std::vector<double> CsvTable::values(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty CSV '" + path.string() + "'");
  t.header = split(line, ',');
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != t.header.size()) throw ConfigError("ragged CSV row in " + path.string());
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_number(c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kWidth = 720.0, kHeight = 480.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 40.0, kBottom = 50.0;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ' ';
    out += format_number(v[k]);
  }
  return out;
}

std::string short_number(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

void write_svg(const std::filesystem::path& path, const std::string& title,
               const std::string& y_label, const std::vector<SvgSeries>& series) {
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series) {
    for (double v : s.x) x0 = std::min(x0, v), x1 = std::max(x1, v);
    for (double v : s.y)
      if (std::isfinite(v)) y0 = std::min(y0, v), y1 = std::max(y1, v);
  }
  if (!(x0 < x1)) x0 -= 0.5, x1 += 0.5;
  if (!(y0 < y1)) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  const auto py = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };

  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out.imbue(std::locale::classic());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << escape(title) << "</text>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + k * (x1 - x0) / 4, yv = y0 + k * (y1 - y0) / 4;
    out << "<text x=\"" << px(xv) << "\" y=\"" << kHeight - kBottom + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">" << short_number(xv) << "</text>\n";
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(yv) + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << short_number(yv) << "</text>\n";
  }
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\" font-size=\"12\">x</text>\n";
  out << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" font-size=\"12\" transform=\"rotate(-90 16 "
      << kTop + ph / 2 << ")\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const SvgSeries& ser = series[s];
    const char* color = kColors[s % std::size(kColors)];
    out << "<g class=\"series\" data-name=\"" << escape(ser.name) << "\" data-x=\"" << join(ser.x)
        << "\" data-y=\"" << join(ser.y) << "\">\n";
    if (ser.markers) {
      for (std::size_t k = 0; k < ser.x.size(); ++k)
        out << "<circle cx=\"" << px(ser.x[k]) << "\" cy=\"" << py(ser.y[k])
            << "\" r=\"1.6\" fill=\"none\" stroke=\"" << color << "\"/>\n";
    } else {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
      for (std::size_t k = 0; k < ser.x.size(); ++k)
        out << (k ? " " : "") << px(ser.x[k]) << ',' << py(ser.y[k]);
      out << "\"/>\n";
    }
    out << "</g>\n";
    out << "<text x=\"" << kLeft + 10 << "\" y=\"" << kTop + 16 + 14 * s << "\" font-size=\"11\" fill=\""
        << color << "\">" << escape(ser.name) << "</text>\n";
  }
  out << "</svg>\n";
}

std::vector<SvgSeries> read_svg_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const auto numbers = [](const std::string& s) {
    std::vector<double> v;
    for (const auto& tok : split(s, ' '))
      if (!tok.empty()) v.push_back(parse_number(tok));
    return v;
  };
  // attribute value following `key="` starting at pos
  const auto attribute = [&](std::size_t pos, const std::string& key, std::size_t end) {
    const std::string open = key + "=\"";
    const std::size_t a = text.find(open, pos);
    if (a == std::string::npos || a > end) throw ConfigError("malformed series in " + path.string());
    const std::size_t b = text.find('"', a + open.size());
    return text.substr(a + open.size(), b - a - open.size());
  };
  std::vector<SvgSeries> out;
  const std::string tag = "<g class=\"series\"";
  for (std::size_t pos = text.find(tag); pos != std::string::npos; pos = text.find(tag, pos + 1)) {
    const std::size_t end = text.find('>', pos);
    SvgSeries s;
    s.name = attribute(pos, "data-name", end);
    s.x = numbers(attribute(pos, "data-x", end));
    s.y = numbers(attribute(pos, "data-y", end));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace pampa
