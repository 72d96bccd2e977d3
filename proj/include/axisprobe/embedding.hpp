#ifndef AXISPROBE_EMBEDDING_HPP
#define AXISPROBE_EMBEDDING_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace axisprobe::embedding {

enum class SourceFormat { word2vec_binary, text_vectors, cache };

// Lookup policy, ordered: each level includes the ones before it.
enum class Fallback { exact, lowercase, subword };

Fallback fallback_from_string(std::string_view s);
std::string_view to_string(Fallback f);

enum class MatchKind { exact, lowercase, subword };
std::string_view to_string(MatchKind m);

// Hash-bucketed character n-gram vectors (fastText convention: n-grams of
// "<word>" with lengths min_n..max_n, FNV-1a-32 bucket hashing). Used to
// compose vectors for out-of-vocabulary words.
struct SubwordTable {
    int min_n = 3;
    int max_n = 6;
    std::size_t bucket_count = 0;
    std::size_t dim = 0;
    std::vector<float> bucket_vectors;  // bucket_count x dim, row-major

    static std::uint32_t hash_ngram(std::string_view ngram);
    std::vector<std::string> extract_ngrams(std::string_view word) const;

    // Unit-normalized sum of the n-gram bucket vectors. Bucket ids are
    // summed in sorted order, so the result is independent of n-gram
    // enumeration order, bit for bit. Absent when the word yields no
    // n-grams or the sum has zero norm.
    std::optional<std::vector<float>> compose(std::string_view word) const;
};

// Text format: "<bucket_count> <dim> <min_n> <max_n>" header line, then one
// line of <dim> floats per bucket.
SubwordTable load_subword_table(const std::string& path);

struct Resolution {
    std::size_t row = SIZE_MAX;  // valid unless via == subword
    MatchKind via = MatchKind::exact;
    std::vector<float> composed;  // set only when via == subword
    bool in_vocab() const { return row != SIZE_MAX; }
};

// Immutable after load; copies share storage. restrict_top_k() returns a
// view over the highest-frequency prefix of the same storage.
class EmbeddingModel {
public:
    EmbeddingModel() = default;

    const std::string& name() const;
    std::size_t dim() const;
    std::size_t vocab_size() const { return active_; }
    SourceFormat source_format() const;
    const std::vector<std::string>& full_vocab() const;
    const std::string& word_at(std::size_t row) const;
    std::span<const float> row(std::size_t i) const;
    std::span<const float> vectors_flat() const;  // active prefix, row-major

    bool has_subwords() const;
    const SubwordTable& subwords() const;
    void attach_subwords(SubwordTable table);  // dim must match

    // Exact byte match, then optional lowercase retry, then optional
    // subword composition. Absence is a value, not an error.
    std::optional<Resolution> resolve(const std::string& word, Fallback fallback) const;

    // Convenience: the resolved unit vector, copied.
    std::optional<std::vector<float>> lookup(const std::string& word, Fallback fallback) const;

    friend EmbeddingModel restrict_top_k(const EmbeddingModel& model, std::size_t k);
    friend class ModelBuilder;
    friend EmbeddingModel load_word2vec_binary(const std::string& path);
    friend EmbeddingModel load_text_vectors(const std::string& path, bool has_header);
    friend EmbeddingModel read_cache(const std::string& path, const std::string& name);

private:
    struct Storage;
    std::shared_ptr<const Storage> storage_;
    std::size_t active_ = 0;
};

// Word2vec binary layout: ASCII "<vocab_size> <dim>\n"; per entry the word
// bytes terminated by 0x20, then dim little-endian IEEE-754 f32, then an
// optional 0x0A. Rows are unit-normalized at load (rows already unit to
// 1e-6 keep their exact bits, so write-backs round-trip byte-identically).
EmbeddingModel load_word2vec_binary(const std::string& path);

// UTF-8 lines "word v1 v2 ... vdim", single-space separated, optional
// "<vocab> <dim>" header. Dim is inferred from the first data line when
// there is no header.
EmbeddingModel load_text_vectors(const std::string& path, bool has_header);

// True when the first line of the file looks like a "<vocab> <dim>" header.
bool detect_text_header(const std::string& path);

// Cache layout: magic "AXPR", u16 version, u32 dim, u64 vocab_size,
// per word a u16 byte length + bytes, then the row-major f32 block.
// All integers and floats little-endian.
void write_cache(const EmbeddingModel& model, const std::string& path);
EmbeddingModel read_cache(const std::string& path, const std::string& name = "");

// Inverse of load_word2vec_binary for synthetic models and conversions.
void write_word2vec_binary(const EmbeddingModel& model, const std::string& path);

// View over the first min(k, vocab_size) entries; k == 0 is invalid.
EmbeddingModel restrict_top_k(const EmbeddingModel& model, std::size_t k);

// Assembles models from non-file sources (tests, synthetic experiments).
// Rows are normalized with the same unit-preserving rule the loaders use.
class ModelBuilder {
public:
    ModelBuilder(std::string name, std::size_t dim);
    void add(std::string word, std::span<const float> vector);
    void add(std::string word, std::span<const double> vector);
    EmbeddingModel build(SourceFormat format = SourceFormat::cache);

private:
    std::string name_;
    std::size_t dim_;
    std::vector<std::string> vocab_;
    std::vector<float> vectors_;
};

}  // namespace axisprobe::embedding

#endif
