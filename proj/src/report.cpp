#include <fstream>
#include <sstream>

#include "fairenc/error.hpp"
#include "fairenc/numfmt.hpp"
#include "fairenc/sweep.hpp"

namespace fairenc {

ReportFormat parse_report_format(std::string_view s) {
  if (s == "csv") return ReportFormat::kCsv;
  if (s == "markdown" || s == "md") return ReportFormat::kMarkdown;
  throw Error(ErrorKind::kInvalidArgument, "unknown report format '" + std::string(s) + "'");
}

namespace {

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> fields_of(const TradeoffRecord& r) {
  return {r.encoder,
          format_double(r.reg_param),
          r.model,
          std::to_string(r.seed),
          format_double(r.auc_global),
          format_double(r.auc_protected),
          format_double(r.auc_reference),
          format_double(r.eof),
          format_double(r.sdp),
          format_double(r.aao),
          format_double(r.l_eof),
          format_double(r.l_sdp),
          format_double(r.l_aao),
          join(r.warnings, ';')};
}

}  // namespace

std::string records_csv(const std::vector<TradeoffRecord>& records) {
  std::string out = kRecordHeader;
  out += '\n';
  for (const auto& r : records) {
    out += join(fields_of(r), ',');
    out += '\n';
  }
  return out;
}

std::string records_markdown(const std::vector<TradeoffRecord>& records) {
  auto row = [](const std::vector<std::string>& cells) {
    std::string line = "|";
    for (const auto& c : cells) line += " " + c + " |";
    return line + "\n";
  };
  std::vector<std::string> header;
  std::stringstream hs(kRecordHeader);
  for (std::string h; std::getline(hs, h, ',');) header.push_back(h);

  std::string out = row(header);
  out += row(std::vector<std::string>(header.size(), "---"));
  for (const auto& r : records) out += row(fields_of(r));
  return out;
}

std::vector<TradeoffRecord> parse_records_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kRecordHeader) {
    throw Error(ErrorKind::kMalformedCsv, "report header does not match the record schema");
  }
  std::vector<TradeoffRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    while (true) {
      const auto pos = line.find(',', start);
      f.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    if (f.size() != 14) throw Error(ErrorKind::kMalformedCsv, "report row has wrong field count");
    TradeoffRecord r;
    r.encoder = f[0];
    r.reg_param = parse_double(f[1]);
    r.model = f[2];
    r.seed = std::stoull(f[3]);
    r.auc_global = parse_double(f[4]);
    r.auc_protected = parse_double(f[5]);
    r.auc_reference = parse_double(f[6]);
    r.eof = parse_double(f[7]);
    r.sdp = parse_double(f[8]);
    r.aao = parse_double(f[9]);
    r.l_eof = parse_double(f[10]);
    r.l_sdp = parse_double(f[11]);
    r.l_aao = parse_double(f[12]);
    if (!f[13].empty()) {
      std::stringstream ws(f[13]);
      for (std::string w; std::getline(ws, w, ';');) r.warnings.push_back(w);
    }
    out.push_back(std::move(r));
  }
  return out;
}

void emit_report(const std::vector<TradeoffRecord>& records, const std::filesystem::path& path,
                 ReportFormat format) {
  if (records.empty()) throw Error(ErrorKind::kInvalidArgument, "no records to emit");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  out << (format == ReportFormat::kCsv ? records_csv(records) : records_markdown(records));
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "write failed for '" + path.string() + "'");
}

}  // namespace fairenc
