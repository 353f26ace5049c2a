#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ui2vec {

// Error categories; the CLI maps each one to a distinct exit code.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct shape_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int kNumClasses = 23;  // 22 canonical widget classes + OTHER
constexpr int kOtherClassId = 22;
constexpr int kNumAppTypes = 27;
constexpr int kPatchSide = 16;
constexpr int kPatchSize = kPatchSide * kPatchSide;

// Screen-fraction box, top-left / bottom-right corners.
struct BoundingBox {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

  bool valid() const {
    return 0 <= x0 && x0 <= x1 && x1 <= 1 && 0 <= y0 && y0 <= y1 && y1 <= 1;
  }
  double cx() const { return 0.5 * (x0 + x1); }
  double cy() const { return 0.5 * (y0 + y1); }
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool operator==(const BoundingBox&) const = default;
};

using TokenSeq = std::vector<int>;

struct VHComponent {
  int class_id = kOtherClassId;
  std::string class_raw;
  TokenSeq text;
  TokenSeq desc;
  TokenSeq resid;
  BoundingBox bounds;
  bool operator==(const VHComponent&) const = default;
};

struct IMGComponent {
  std::vector<double> patch;  // 16x16 grayscale intensities, row-major
  BoundingBox bounds;
  bool operator==(const IMGComponent&) const = default;
};

struct OCRComponent {
  TokenSeq text;
  BoundingBox bounds;
  bool operator==(const OCRComponent&) const = default;
};

// One UI: img[i] is the patch cropped at vh[i]'s bounds, so the two lists
// are index-parallel (unless the corpus is flagged no_vh and vh is empty).
struct UIExample {
  std::string id;
  std::optional<int> app_type;
  bool synced = true;
  std::vector<IMGComponent> img;
  std::vector<VHComponent> vh;
  std::vector<OCRComponent> ocr;
  std::optional<std::vector<int>> icon_labels;  // per img/vh index
  bool operator==(const UIExample&) const = default;
};

struct RetrievalPair {
  std::string anchor_ui;
  int anchor_index = 0;
  std::string search_ui;
  std::vector<int> candidate_indices;
  int gold_index = 0;  // component index, member of candidate_indices
  bool operator==(const RetrievalPair&) const = default;
};

struct ReferringExample {
  std::string ui;
  TokenSeq expression_tokens;
  std::vector<int> candidate_indices;
  int gold_index = 0;
  bool operator==(const ReferringExample&) const = default;
};

struct SyncExample {
  UIExample ui;
  int label = 1;  // 1 = view hierarchy matches the screen
  bool operator==(const SyncExample&) const = default;
};

struct ValidateOptions {
  bool no_vh = false;  // web-style corpora may have empty vh lists
  int max_field_tokens = 8;
};

// Total function: returns one human-readable violation per broken invariant,
// empty list iff the example is well formed. Never mutates its input.
std::vector<std::string> validate_example(const UIExample& e,
                                          const ValidateOptions& opts = {});

struct Corpus {
  bool no_vh = false;
  std::vector<UIExample> examples;
};

// JSONL with a one-line format header; see README for the schema.
void write_corpus(const Corpus& corpus, const std::string& path);
Corpus read_corpus(const std::string& path);

void write_retrieval_pairs(const std::vector<RetrievalPair>& pairs,
                           const std::string& path);
std::vector<RetrievalPair> read_retrieval_pairs(const std::string& path);

void write_referring_examples(const std::vector<ReferringExample>& examples,
                              const std::string& path);
std::vector<ReferringExample> read_referring_examples(const std::string& path);

void write_sync_examples(const std::vector<SyncExample>& examples,
                         const std::string& path);
std::vector<SyncExample> read_sync_examples(const std::string& path);

}  // namespace ui2vec
