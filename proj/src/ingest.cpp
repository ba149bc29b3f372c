#include "claimforge/ingest.hpp"

#include <chrono>
#include <fstream>
#include <stdexcept>

#include "claimforge/special_tokens.hpp"

namespace claimforge {

namespace {

std::string_view trim_ws(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
  return s.substr(b, e - b);
}

// Returns the offset of the first invalid UTF-8 byte, or npos.
size_t find_invalid_utf8(std::string_view data) {
  size_t i = 0;
  while (i < data.size()) {
    unsigned char c = static_cast<unsigned char>(data[i]);
    size_t len;
    uint32_t cp;
    if (c < 0x80) {
      i += 1;
      continue;
    } else if ((c & 0xe0) == 0xc0) {
      len = 2;
      cp = c & 0x1f;
    } else if ((c & 0xf0) == 0xe0) {
      len = 3;
      cp = c & 0x0f;
    } else if ((c & 0xf8) == 0xf0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return i;
    }
    if (i + len > data.size()) return i;
    for (size_t k = 1; k < len; ++k) {
      unsigned char cc = static_cast<unsigned char>(data[i + k]);
      if ((cc & 0xc0) != 0x80) return i;
      cp = (cp << 6) | (cc & 0x3f);
    }
    // Reject overlongs, surrogates, and out-of-range code points.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        (cp >= 0xd800 && cp <= 0xdfff) || cp > 0x10ffff) {
      return i;
    }
    i += len;
  }
  return std::string_view::npos;
}

struct CsvRow {
  std::vector<std::string> fields;
  size_t line;  // 1-based line number of the row start
};

// RFC 4180 parser over the whole buffer. Quoted fields may contain commas,
// doubled quotes, and newlines.
std::vector<CsvRow> parse_rows(std::string_view data) {
  std::vector<CsvRow> rows;
  size_t i = 0;
  size_t line = 1;
  while (i < data.size()) {
    CsvRow row;
    row.line = line;
    std::string field;
    bool in_quotes = false;
    bool done = false;
    while (!done) {
      if (i >= data.size()) {
        row.fields.push_back(std::move(field));
        break;
      }
      char c = data[i];
      if (in_quotes) {
        if (c == '"') {
          if (i + 1 < data.size() && data[i + 1] == '"') {
            field += '"';
            i += 2;
          } else {
            in_quotes = false;
            ++i;
          }
        } else {
          if (c == '\n') ++line;
          field += c;
          ++i;
        }
      } else {
        switch (c) {
          case '"':
            in_quotes = true;
            ++i;
            break;
          case ',':
            row.fields.push_back(std::move(field));
            field.clear();
            ++i;
            break;
          case '\r':
            if (i + 1 < data.size() && data[i + 1] == '\n') ++i;
            [[fallthrough]];
          case '\n':
            ++i;
            ++line;
            row.fields.push_back(std::move(field));
            done = true;
            break;
          default:
            field += c;
            ++i;
        }
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> split_cpc_cell(std::string_view cell) {
  std::vector<std::string> codes;
  size_t pos = 0;
  while (pos <= cell.size()) {
    size_t comma = cell.find(',', pos);
    std::string_view piece =
        comma == std::string_view::npos ? cell.substr(pos) : cell.substr(pos, comma - pos);
    std::string_view code = trim_ws(piece);
    if (!code.empty()) codes.emplace_back(code);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return codes;
}

}  // namespace

bool is_valid_cpc_subclass(std::string_view code) {
  if (code.size() != 4) return false;
  char section = code[0];
  if (!((section >= 'A' && section <= 'H') || section == 'Y')) return false;
  if (code[1] < '0' || code[1] > '9' || code[2] < '0' || code[2] > '9') return false;
  return code[3] >= 'A' && code[3] <= 'Z';
}

bool is_valid_iso_date(std::string_view date) {
  if (date.size() != 10 || date[4] != '-' || date[7] != '-') return false;
  for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (date[i] < '0' || date[i] > '9') return false;
  }
  int y = (date[0] - '0') * 1000 + (date[1] - '0') * 100 + (date[2] - '0') * 10 + (date[3] - '0');
  unsigned m = static_cast<unsigned>((date[5] - '0') * 10 + (date[6] - '0'));
  unsigned d = static_cast<unsigned>((date[8] - '0') * 10 + (date[9] - '0'));
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                        std::chrono::day{d}};
  return ymd.ok();
}

Corpus load_corpus(const std::string& path, std::optional<size_t> limit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("corpus file not found: " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  // Tolerate and strip a UTF-8 BOM.
  std::string_view view{data};
  if (view.size() >= 3 && view.substr(0, 3) == "\xef\xbb\xbf") view.remove_prefix(3);

  if (size_t bad = find_invalid_utf8(view); bad != std::string_view::npos) {
    size_t absolute = bad + (view.data() - data.data());
    size_t line = 1;
    for (size_t i = 0; i < absolute; ++i) {
      if (data[i] == '\n') ++line;
    }
    throw CorpusError(path + ": invalid UTF-8 byte at offset " + std::to_string(absolute) +
                      " (row " + std::to_string(line) + ")");
  }

  std::vector<CsvRow> rows = parse_rows(view);
  if (rows.empty()) throw CorpusError(path + ": empty file, expected header cpc_ids,id,date,text");
  const std::vector<std::string> expected_header{"cpc_ids", "id", "date", "text"};
  if (rows.front().fields != expected_header) {
    throw CorpusError(path + ": wrong header row, expected cpc_ids,id,date,text");
  }

  Corpus corpus;
  auto reject = [&corpus](const char* reason) {
    ++corpus.stats.records_rejected;
    ++corpus.stats.rejection_reasons[reason];
  };

  for (size_t r = 1; r < rows.size(); ++r) {
    if (limit && corpus.records.size() >= *limit) break;
    const CsvRow& row = rows[r];
    // A trailing newline yields one final empty single-field row; skip it.
    if (r + 1 == rows.size() && row.fields.size() == 1 && row.fields[0].empty()) break;
    if (row.fields.size() != 4) {
      reject(kRejectFieldCount);
      continue;
    }
    const std::string& cpc_cell = row.fields[0];
    const std::string& id = row.fields[1];
    const std::string& date = row.fields[2];
    const std::string& text = row.fields[3];

    if (id.empty()) {
      reject(kRejectEmptyPatentId);
      continue;
    }
    if (!is_valid_iso_date(date)) {
      reject(kRejectBadDate);
      continue;
    }
    std::vector<std::string> codes = split_cpc_cell(cpc_cell);
    bool cpc_ok = true;
    for (const std::string& code : codes) {
      if (!is_valid_cpc_subclass(code)) {
        cpc_ok = false;
        break;
      }
    }
    if (!cpc_ok) {
      reject(kRejectBadCpc);
      continue;
    }
    if (trim_ws(text).empty()) {
      reject(kRejectEmptyClaimText);
      continue;
    }
    if (text.find(kSepTag) != std::string::npos) {
      reject(kRejectSeparatorCollision);
      continue;
    }
    corpus.records.push_back(ClaimRecord{id, date, std::move(codes), text});
    ++corpus.stats.records_loaded;
  }
  return corpus;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view data) {
  std::vector<std::vector<std::string>> out;
  for (CsvRow& row : parse_rows(data)) out.push_back(std::move(row.fields));
  return out;
}

std::string csv_escape(std::string_view cell) {
  bool needs_quotes = cell.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quotes) return std::string{cell};
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

}  // namespace claimforge
