#include "ui2vec/core.hpp"

#include <fstream>
#include <json.hpp>

namespace ui2vec {

using nlohmann::json;

namespace {

void check_bounds(const BoundingBox& b, const std::string& field,
                  std::vector<std::string>& out) {
  if (b.x0 > b.x1 || b.y0 > b.y1) out.push_back(field + " bounds ordering");
  if (b.x0 < 0 || b.x1 > 1 || b.y0 < 0 || b.y1 > 1)
    out.push_back(field + " bounds range");
}

void check_tokens(const TokenSeq& t, const std::string& field, int max_tokens,
                  std::vector<std::string>& out) {
  if (static_cast<int>(t.size()) > max_tokens)
    out.push_back(field + " exceeds max_field_tokens");
}

}  // namespace

std::vector<std::string> validate_example(const UIExample& e,
                                          const ValidateOptions& opts) {
  std::vector<std::string> v;
  const bool vh_waived = opts.no_vh && e.vh.empty();
  if (!vh_waived && e.img.size() != e.vh.size())
    v.push_back("img/vh length mismatch");
  if (e.img.empty()) v.push_back("img empty");
  if (e.ocr.empty()) v.push_back("ocr empty");
  if (e.app_type && (*e.app_type < 0 || *e.app_type >= kNumAppTypes))
    v.push_back("app_type range");

  for (size_t i = 0; i < e.img.size(); ++i) {
    const auto& c = e.img[i];
    const std::string field = "img[" + std::to_string(i) + "]";
    if (c.patch.size() != kPatchSize) v.push_back(field + ".patch size");
    for (double p : c.patch) {
      if (p < 0 || p > 1) {
        v.push_back(field + ".patch range");
        break;
      }
    }
    check_bounds(c.bounds, field, v);
    if (!vh_waived && i < e.vh.size() && !(c.bounds == e.vh[i].bounds))
      v.push_back(field + ".bounds alignment");
  }
  for (size_t i = 0; i < e.vh.size(); ++i) {
    const auto& c = e.vh[i];
    const std::string field = "vh[" + std::to_string(i) + "]";
    if (c.class_id < 0 || c.class_id >= kNumClasses)
      v.push_back(field + ".class_id range");
    check_tokens(c.text, field + ".text", opts.max_field_tokens, v);
    check_tokens(c.desc, field + ".desc", opts.max_field_tokens, v);
    check_tokens(c.resid, field + ".resid", opts.max_field_tokens, v);
    check_bounds(c.bounds, field, v);
  }
  for (size_t i = 0; i < e.ocr.size(); ++i) {
    const auto& c = e.ocr[i];
    const std::string field = "ocr[" + std::to_string(i) + "]";
    if (c.text.empty()) v.push_back(field + ".text empty");
    check_tokens(c.text, field + ".text", opts.max_field_tokens, v);
    check_bounds(c.bounds, field, v);
  }
  if (e.icon_labels && e.icon_labels->size() != e.img.size())
    v.push_back("icon_labels size");
  return v;
}

namespace {

json bounds_to_json(const BoundingBox& b) {
  return json::array({b.x0, b.y0, b.x1, b.y1});
}

BoundingBox bounds_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw parse_error("bounds must be [x0,y0,x1,y1]");
  return BoundingBox{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
                     j[3].get<double>()};
}

json example_to_json(const UIExample& e) {
  json j;
  j["id"] = e.id;
  j["app_type"] = e.app_type ? json(*e.app_type) : json(nullptr);
  j["synced"] = e.synced;
  json img = json::array();
  for (const auto& c : e.img)
    img.push_back({{"patch", c.patch}, {"bounds", bounds_to_json(c.bounds)}});
  j["img"] = std::move(img);
  json vh = json::array();
  for (const auto& c : e.vh)
    vh.push_back({{"class_id", c.class_id},
                  {"class_raw", c.class_raw},
                  {"text", c.text},
                  {"desc", c.desc},
                  {"resid", c.resid},
                  {"bounds", bounds_to_json(c.bounds)}});
  j["vh"] = std::move(vh);
  json ocr = json::array();
  for (const auto& c : e.ocr)
    ocr.push_back({{"text", c.text}, {"bounds", bounds_to_json(c.bounds)}});
  j["ocr"] = std::move(ocr);
  if (e.icon_labels) j["icon_labels"] = *e.icon_labels;
  return j;
}

UIExample example_from_json(const json& j) {
  UIExample e;
  e.id = j.at("id").get<std::string>();
  if (j.contains("app_type") && !j["app_type"].is_null())
    e.app_type = j["app_type"].get<int>();
  e.synced = j.at("synced").get<bool>();
  for (const auto& c : j.at("img")) {
    IMGComponent ic;
    ic.patch = c.at("patch").get<std::vector<double>>();
    ic.bounds = bounds_from_json(c.at("bounds"));
    e.img.push_back(std::move(ic));
  }
  for (const auto& c : j.at("vh")) {
    VHComponent vc;
    vc.class_id = c.at("class_id").get<int>();
    vc.class_raw = c.at("class_raw").get<std::string>();
    vc.text = c.at("text").get<TokenSeq>();
    vc.desc = c.at("desc").get<TokenSeq>();
    vc.resid = c.at("resid").get<TokenSeq>();
    vc.bounds = bounds_from_json(c.at("bounds"));
    e.vh.push_back(std::move(vc));
  }
  for (const auto& c : j.at("ocr")) {
    OCRComponent oc;
    oc.text = c.at("text").get<TokenSeq>();
    oc.bounds = bounds_from_json(c.at("bounds"));
    e.ocr.push_back(std::move(oc));
  }
  if (j.contains("icon_labels"))
    e.icon_labels = j["icon_labels"].get<std::vector<int>>();
  return e;
}

class JsonlWriter {
 public:
  JsonlWriter(const std::string& path, const char* format, json extra = {}) : out_(path) {
    if (!out_) throw io_error("cannot open for writing: " + path);
    json header = {{"format", format}, {"version", 1}};
    if (extra.is_object())
      for (auto& [k, val] : extra.items()) header[k] = val;
    out_ << header.dump() << '\n';
  }
  void row(const json& j) { out_ << j.dump() << '\n'; }
  void close(const std::string& path) {
    out_.flush();
    if (!out_) throw io_error("write failed: " + path);
  }

 private:
  std::ofstream out_;
};

class JsonlReader {
 public:
  JsonlReader(const std::string& path, const char* format) : in_(path), path_(path) {
    if (!in_) throw io_error("cannot open for reading: " + path);
    header_ = next_json();
    if (!header_ || (*header_).value("format", "") != format)
      throw parse_error(path + ": line 1: expected header with format \"" +
                        format + "\"");
    if ((*header_).value("version", -1) != 1)
      throw parse_error(path + ": line 1: unsupported version");
  }

  const json& header() const { return *header_; }

  std::optional<json> next_json() {
    std::string line;
    if (!std::getline(in_, line)) return std::nullopt;
    ++line_no_;
    try {
      return json::parse(line);
    } catch (const json::exception& ex) {
      throw parse_error(path_ + ": line " + std::to_string(line_no_) + ": " +
                        ex.what());
    }
  }

  int line_no() const { return line_no_; }
  const std::string& path() const { return path_; }

 private:
  std::ifstream in_;
  std::string path_;
  int line_no_ = 0;
  std::optional<json> header_;
};

}  // namespace

void write_corpus(const Corpus& corpus, const std::string& path) {
  json extra;
  if (corpus.no_vh) extra = json{{"no_vh", true}};
  JsonlWriter w(path, "ui2vec-corpus", extra);
  for (const auto& e : corpus.examples) w.row(example_to_json(e));
  w.close(path);
}

Corpus read_corpus(const std::string& path) {
  JsonlReader r(path, "ui2vec-corpus");
  Corpus corpus;
  corpus.no_vh = r.header().value("no_vh", false);
  while (auto j = r.next_json()) {
    try {
      corpus.examples.push_back(example_from_json(*j));
    } catch (const json::exception& ex) {
      throw parse_error(path + ": line " + std::to_string(r.line_no()) + ": " +
                        ex.what());
    }
  }
  return corpus;
}

void write_retrieval_pairs(const std::vector<RetrievalPair>& pairs,
                           const std::string& path) {
  JsonlWriter w(path, "ui2vec-pairs");
  for (const auto& p : pairs)
    w.row({{"anchor_ui", p.anchor_ui},
           {"anchor_index", p.anchor_index},
           {"search_ui", p.search_ui},
           {"candidate_indices", p.candidate_indices},
           {"gold_index", p.gold_index}});
  w.close(path);
}

std::vector<RetrievalPair> read_retrieval_pairs(const std::string& path) {
  JsonlReader r(path, "ui2vec-pairs");
  std::vector<RetrievalPair> out;
  while (auto j = r.next_json()) {
    try {
      RetrievalPair p;
      p.anchor_ui = j->at("anchor_ui").get<std::string>();
      p.anchor_index = j->at("anchor_index").get<int>();
      p.search_ui = j->at("search_ui").get<std::string>();
      p.candidate_indices = j->at("candidate_indices").get<std::vector<int>>();
      p.gold_index = j->at("gold_index").get<int>();
      out.push_back(std::move(p));
    } catch (const json::exception& ex) {
      throw parse_error(path + ": line " + std::to_string(r.line_no()) + ": " +
                        ex.what());
    }
  }
  return out;
}

void write_referring_examples(const std::vector<ReferringExample>& examples,
                              const std::string& path) {
  JsonlWriter w(path, "ui2vec-refexp");
  for (const auto& e : examples)
    w.row({{"ui", e.ui},
           {"expression_tokens", e.expression_tokens},
           {"candidate_indices", e.candidate_indices},
           {"gold_index", e.gold_index}});
  w.close(path);
}

std::vector<ReferringExample> read_referring_examples(const std::string& path) {
  JsonlReader r(path, "ui2vec-refexp");
  std::vector<ReferringExample> out;
  while (auto j = r.next_json()) {
    try {
      ReferringExample e;
      e.ui = j->at("ui").get<std::string>();
      e.expression_tokens = j->at("expression_tokens").get<TokenSeq>();
      e.candidate_indices = j->at("candidate_indices").get<std::vector<int>>();
      e.gold_index = j->at("gold_index").get<int>();
      out.push_back(std::move(e));
    } catch (const json::exception& ex) {
      throw parse_error(path + ": line " + std::to_string(r.line_no()) + ": " +
                        ex.what());
    }
  }
  return out;
}

void write_sync_examples(const std::vector<SyncExample>& examples,
                         const std::string& path) {
  JsonlWriter w(path, "ui2vec-sync");
  for (const auto& e : examples)
    w.row({{"ui", example_to_json(e.ui)}, {"label", e.label}});
  w.close(path);
}

std::vector<SyncExample> read_sync_examples(const std::string& path) {
  JsonlReader r(path, "ui2vec-sync");
  std::vector<SyncExample> out;
  while (auto j = r.next_json()) {
    try {
      SyncExample e;
      e.ui = example_from_json(j->at("ui"));
      e.label = j->at("label").get<int>();
      out.push_back(std::move(e));
    } catch (const json::exception& ex) {
      throw parse_error(path + ": line " + std::to_string(r.line_no()) + ": " +
                        ex.what());
    }
  }
  return out;
}

}  // namespace ui2vec
