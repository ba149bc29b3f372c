#include "claimforge/minicorpus.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "claimforge/sampling.hpp"

namespace claimforge {

namespace {

constexpr std::array kKinds = {"method",     "system",  "apparatus", "device",
                               "controller", "assembly", "module",    "mechanism"};
constexpr std::array kTasks = {"calibrating", "monitoring", "encoding",      "filtering",
                               "routing",     "aligning",   "synchronizing", "measuring"};
constexpr std::array kObjects = {"a sensor array",   "a data stream",  "an optical signal",
                                 "a fluid channel",  "a power supply", "a network packet",
                                 "a drive shaft",    "an image frame"};
constexpr std::array kVerbs = {"receiving",    "determining", "generating", "comparing",
                               "storing",      "transmitting", "adjusting",  "selecting"};
constexpr std::array kAdjectives = {"first",      "second",  "third",     "reference",
                                    "auxiliary",  "primary", "calibrated", "filtered"};
constexpr std::array kNouns = {"signal",  "value",   "parameter",   "threshold",
                               "buffer",  "profile", "coefficient", "register"};
constexpr std::array kModifiers = {"based on the reference value", "in response to the request",
                                   "from the memory unit",         "according to the profile",
                                   "during the first interval",    "for each cycle",
                                   "at a predetermined rate",      "over the communication link"};
constexpr std::array kStates = {"stored in the buffer",       "greater than the threshold",
                                "derived from the parameter", "updated for each cycle"};
constexpr std::array kCpcCodes = {"A61B", "B23K", "C07D", "E21B", "F16H",
                                  "G06F", "G06N", "H04L", "Y02E"};

template <size_t N>
const char* pick(Rng& rng, const std::array<const char*, N>& table) {
  return table[static_cast<size_t>(rng.next_unit() * N)];
}

std::string make_element(Rng& rng) {
  std::string out = pick(rng, kVerbs);
  out += " a ";
  out += pick(rng, kAdjectives);
  out += ' ';
  out += pick(rng, kNouns);
  const double tail = rng.next_unit();
  if (tail < 0.4) {
    out += ' ';
    out += pick(rng, kModifiers);
  } else if (tail < 0.6) {
    out += ", wherein the ";
    out += pick(rng, kNouns);
    out += " is ";
    out += pick(rng, kStates);
  }
  return out;
}

std::string make_claim_text(Rng& rng, const MiniCorpusOptions& options) {
  const char* kind = pick(rng, kKinds);
  std::string text = "A ";
  text += kind;
  text += " for ";
  text += pick(rng, kTasks);
  text += ' ';
  text += pick(rng, kObjects);
  text += ", the ";
  text += kind;
  text += " comprising:";
  const size_t span = options.max_elements - options.min_elements + 1;
  const size_t elements =
      options.min_elements + static_cast<size_t>(rng.next_unit() * static_cast<double>(span));
  for (size_t e = 0; e < elements; ++e) {
    if (e > 0) text += ';';
    if (e + 1 == elements && elements > 1) text += "and ";
    text += make_element(rng);
  }
  text += '.';
  return text;
}

std::string make_date(Rng& rng) {
  const int month = 1 + static_cast<int>(rng.next_unit() * 12);
  const int day = 1 + static_cast<int>(rng.next_unit() * 28);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "2013-%02d-%02d", month, day);
  return buf;
}

std::vector<std::string> make_cpc_ids(Rng& rng) {
  const size_t n = 1 + static_cast<size_t>(rng.next_unit() * 3);
  std::vector<std::string> codes;
  for (size_t i = 0; i < n; ++i) {
    std::string code = pick(rng, kCpcCodes);
    if (std::find(codes.begin(), codes.end(), code) == codes.end()) codes.push_back(code);
  }
  return codes;
}

}  // namespace

std::vector<ClaimRecord> make_mini_corpus(const MiniCorpusOptions& options) {
  Rng rng{options.seed};
  std::vector<ClaimRecord> records;
  records.reserve(options.count);
  for (size_t i = 0; i < options.count; ++i) {
    ClaimRecord record;
    record.patent_id = std::to_string(8500000 + i);
    record.grant_date = make_date(rng);
    record.cpc_ids = make_cpc_ids(rng);
    record.claim_text = make_claim_text(rng, options);
    records.push_back(std::move(record));
  }
  return records;
}

void write_corpus_csv(const std::string& path, const std::vector<ClaimRecord>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open corpus file for writing: " + path);
  out << "cpc_ids,id,date,text\n";
  for (const ClaimRecord& record : records) {
    std::string cpc_cell;
    for (size_t i = 0; i < record.cpc_ids.size(); ++i) {
      if (i) cpc_cell += ',';
      cpc_cell += record.cpc_ids[i];
    }
    out << csv_escape(cpc_cell) << ',' << csv_escape(record.patent_id) << ','
        << csv_escape(record.grant_date) << ',' << csv_escape(record.claim_text) << '\n';
  }
  if (!out) throw std::runtime_error("corpus write failed: " + path);
}

}  // namespace claimforge
