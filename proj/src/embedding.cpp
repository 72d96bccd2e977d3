#include "axisprobe/embedding.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "axisprobe/errors.hpp"
#include "axisprobe/numeric.hpp"

namespace axisprobe::embedding {

namespace {

constexpr char kCacheMagic[4] = {'A', 'X', 'P', 'R'};
constexpr std::uint16_t kCacheVersion = 1;
// Rows whose norm already sits inside the unit tolerance keep their exact
// bits; renormalizing them would perturb round-trip identity for nothing.
constexpr double kUnitTolerance = 1e-6;

std::string ascii_lower(std::string_view w) {
    std::string out(w);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

void normalize_row(float* row, std::size_t dim, const std::string& word, std::size_t offset) {
    for (std::size_t i = 0; i < dim; ++i) {
        if (!std::isfinite(row[i]))
            throw ParseError("non-finite component in vector for word \"" + word + "\"", offset);
    }
    const double n = numeric::norm(std::span<const float>(row, dim));
    if (n < 1e-12)
        throw ParseError("zero-norm vector for word \"" + word + "\"", offset);
    if (std::fabs(n - 1.0) <= kUnitTolerance) return;
    for (std::size_t i = 0; i < dim; ++i) {
        row[i] = static_cast<float>(static_cast<double>(row[i]) / n);
    }
}

float read_le_f32(const unsigned char* p) {
    const std::uint32_t u = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                            (static_cast<std::uint32_t>(p[2]) << 16) |
                            (static_cast<std::uint32_t>(p[3]) << 24);
    float f;
    std::memcpy(&f, &u, sizeof(f));
    return f;
}

void write_le_f32(float f, std::string& out) {
    std::uint32_t u;
    std::memcpy(&u, &f, sizeof(u));
    out.push_back(static_cast<char>(u & 0xff));
    out.push_back(static_cast<char>((u >> 8) & 0xff));
    out.push_back(static_cast<char>((u >> 16) & 0xff));
    out.push_back(static_cast<char>((u >> 24) & 0xff));
}

template <typename T>
void write_le_uint(T value, std::ostream& os) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        os.put(static_cast<char>((value >> (8 * i)) & 0xff));
    }
}

template <typename T>
T read_le_uint(std::istream& is, const char* what) {
    unsigned char buf[sizeof(T)];
    if (!is.read(reinterpret_cast<char*>(buf), sizeof(T)))
        throw CacheError(std::string("truncated cache file while reading ") + what);
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        v |= static_cast<T>(buf[i]) << (8 * i);
    }
    return v;
}

std::string stem_of(const std::string& path) {
    const std::size_t slash = path.find_last_of("/\\");
    const std::size_t start = slash == std::string::npos ? 0 : slash + 1;
    const std::size_t dot = path.find_last_of('.');
    if (dot == std::string::npos || dot <= start) return path.substr(start);
    return path.substr(start, dot - start);
}

}  // namespace

struct EmbeddingModel::Storage {
    std::string name;
    std::size_t dim = 0;
    std::vector<std::string> vocab;
    std::vector<float> vectors;
    SourceFormat format = SourceFormat::cache;
    std::optional<SubwordTable> subwords;
    std::unordered_map<std::string_view, std::size_t> index;

    void build_index() {
        index.clear();
        index.reserve(vocab.size());
        for (std::size_t i = 0; i < vocab.size(); ++i) {
            index.emplace(vocab[i], i);
        }
    }
};

Fallback fallback_from_string(std::string_view s) {
    if (s == "exact") return Fallback::exact;
    if (s == "lowercase") return Fallback::lowercase;
    if (s == "subword") return Fallback::subword;
    throw InvalidArgument("unknown fallback policy: " + std::string(s));
}

std::string_view to_string(Fallback f) {
    switch (f) {
        case Fallback::exact: return "exact";
        case Fallback::lowercase: return "lowercase";
        case Fallback::subword: return "subword";
    }
    return "?";
}

std::string_view to_string(MatchKind m) {
    switch (m) {
        case MatchKind::exact: return "exact";
        case MatchKind::lowercase: return "lowercase";
        case MatchKind::subword: return "subword";
    }
    return "?";
}

const std::string& EmbeddingModel::name() const { return storage_->name; }
std::size_t EmbeddingModel::dim() const { return storage_ ? storage_->dim : 0; }
SourceFormat EmbeddingModel::source_format() const { return storage_->format; }
const std::vector<std::string>& EmbeddingModel::full_vocab() const { return storage_->vocab; }
const std::string& EmbeddingModel::word_at(std::size_t r) const { return storage_->vocab.at(r); }

std::span<const float> EmbeddingModel::row(std::size_t i) const {
    if (i >= active_) throw InvalidArgument("row index out of range");
    return {storage_->vectors.data() + i * storage_->dim, storage_->dim};
}

std::span<const float> EmbeddingModel::vectors_flat() const {
    return {storage_->vectors.data(), active_ * storage_->dim};
}

bool EmbeddingModel::has_subwords() const { return storage_ && storage_->subwords.has_value(); }
const SubwordTable& EmbeddingModel::subwords() const { return *storage_->subwords; }

void EmbeddingModel::attach_subwords(SubwordTable table) {
    if (!storage_) throw InvalidArgument("cannot attach subwords to an empty model");
    if (table.dim != storage_->dim)
        throw InvalidArgument("subword table dimensionality does not match the model");
    // Storage is shared immutable; attaching produces a modified copy.
    auto copy = std::make_shared<Storage>(*storage_);
    copy->subwords = std::move(table);
    copy->build_index();  // index views must point into the copied vocab
    storage_ = std::move(copy);
}

std::optional<Resolution> EmbeddingModel::resolve(const std::string& word, Fallback fallback) const {
    const auto& index = storage_->index;
    if (auto it = index.find(std::string_view(word)); it != index.end() && it->second < active_) {
        return Resolution{it->second, MatchKind::exact, {}};
    }
    if (fallback >= Fallback::lowercase) {
        const std::string lower = ascii_lower(word);
        if (lower != word) {
            if (auto it = index.find(std::string_view(lower)); it != index.end() && it->second < active_) {
                return Resolution{it->second, MatchKind::lowercase, {}};
            }
        }
    }
    if (fallback == Fallback::subword && storage_->subwords) {
        if (auto composed = storage_->subwords->compose(word)) {
            Resolution r;
            r.via = MatchKind::subword;
            r.composed = std::move(*composed);
            return r;
        }
    }
    return std::nullopt;
}

std::optional<std::vector<float>> EmbeddingModel::lookup(const std::string& word,
                                                         Fallback fallback) const {
    auto r = resolve(word, fallback);
    if (!r) return std::nullopt;
    if (r->in_vocab()) {
        const auto v = row(r->row);
        return std::vector<float>(v.begin(), v.end());
    }
    return std::move(r->composed);
}

EmbeddingModel restrict_top_k(const EmbeddingModel& model, std::size_t k) {
    if (k == 0) throw InvalidArgument("restrict_top_k requires k > 0");
    EmbeddingModel view = model;
    view.active_ = std::min(k, model.active_);
    return view;
}

// ---------------------------------------------------------------------------
// SubwordTable

std::uint32_t SubwordTable::hash_ngram(std::string_view ngram) {
    std::uint32_t h = 2166136261u;
    for (char c : ngram) {
        // fastText sign-extends each byte before xor; match it so bucket
        // assignments agree with tables exported from fastText models.
        h ^= static_cast<std::uint32_t>(static_cast<std::int32_t>(static_cast<signed char>(c)));
        h *= 16777619u;
    }
    return h;
}

std::vector<std::string> SubwordTable::extract_ngrams(std::string_view word) const {
    const std::string marked = "<" + std::string(word) + ">";
    std::vector<std::string> out;
    const std::size_t len = marked.size();
    for (std::size_t start = 0; start < len; ++start) {
        for (int n = min_n; n <= max_n; ++n) {
            if (start + static_cast<std::size_t>(n) > len) break;
            out.emplace_back(marked.substr(start, static_cast<std::size_t>(n)));
        }
    }
    return out;
}

std::optional<std::vector<float>> SubwordTable::compose(std::string_view word) const {
    const std::vector<std::string> grams = extract_ngrams(word);
    if (grams.empty() || bucket_count == 0) return std::nullopt;

    std::vector<std::size_t> buckets;
    buckets.reserve(grams.size());
    for (const auto& g : grams) {
        buckets.push_back(hash_ngram(g) % bucket_count);
    }
    // Canonical summation order: any permutation of the n-grams produces
    // bit-identical output.
    std::sort(buckets.begin(), buckets.end());

    std::vector<double> sum(dim, 0.0);
    for (std::size_t b : buckets) {
        const float* v = bucket_vectors.data() + b * dim;
        for (std::size_t i = 0; i < dim; ++i) sum[i] += static_cast<double>(v[i]);
    }
    const double n = numeric::norm(std::span<const double>(sum));
    if (n < 1e-12) return std::nullopt;
    std::vector<float> out(dim);
    for (std::size_t i = 0; i < dim; ++i) out[i] = static_cast<float>(sum[i] / n);
    return out;
}

SubwordTable load_subword_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open subword table: " + path);
    SubwordTable t;
    std::string header;
    if (!std::getline(in, header)) throw ParseError("empty subword table: " + path, 0, 1);
    {
        std::istringstream hs(header);
        if (!(hs >> t.bucket_count >> t.dim >> t.min_n >> t.max_n) || t.bucket_count == 0 ||
            t.dim == 0 || t.min_n < 1 || t.max_n < t.min_n)
            throw ParseError("bad subword table header: " + header, 0, 1);
    }
    t.bucket_vectors.resize(t.bucket_count * t.dim);
    std::string line;
    for (std::size_t b = 0; b < t.bucket_count; ++b) {
        if (!std::getline(in, line))
            throw ParseError("subword table truncated at bucket " + std::to_string(b), 0, b + 2);
        std::istringstream ls(line);
        for (std::size_t i = 0; i < t.dim; ++i) {
            if (!(ls >> t.bucket_vectors[b * t.dim + i]))
                throw ParseError("bad float in subword table", 0, b + 2);
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// word2vec binary

EmbeddingModel load_word2vec_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open model file: " + path);

    std::size_t offset = 0;
    auto get_byte = [&](int& c) {
        c = in.get();
        if (c != EOF) ++offset;
        return c != EOF;
    };

    // Header: two ASCII integers, space separated, newline terminated.
    std::string header;
    {
        int c;
        while (get_byte(c) && c != '\n') {
            header.push_back(static_cast<char>(c));
            if (header.size() > 64) throw ParseError("header line too long", offset);
        }
        if (header.empty()) throw ParseError("empty or truncated header", offset);
    }
    std::uint64_t vocab_size = 0;
    std::uint64_t dim = 0;
    {
        const char* begin = header.data();
        const char* end = begin + header.size();
        auto r1 = std::from_chars(begin, end, vocab_size);
        if (r1.ec != std::errc() || r1.ptr == end || *r1.ptr != ' ')
            throw ParseError("header does not parse as \"<vocab> <dim>\"", offset);
        auto r2 = std::from_chars(r1.ptr + 1, end, dim);
        if (r2.ec != std::errc() || r2.ptr != end)
            throw ParseError("header does not parse as \"<vocab> <dim>\"", offset);
        if (vocab_size == 0 || dim == 0) throw ParseError("header declares an empty model", offset);
    }

    auto storage = std::make_shared<EmbeddingModel::Storage>();
    storage->name = stem_of(path);
    storage->dim = static_cast<std::size_t>(dim);
    storage->format = SourceFormat::word2vec_binary;
    storage->vocab.reserve(vocab_size);
    storage->vectors.resize(static_cast<std::size_t>(vocab_size) * dim);
    storage->index.reserve(vocab_size);

    std::vector<unsigned char> raw(dim * 4);
    for (std::uint64_t w = 0; w < vocab_size; ++w) {
        std::string word;
        int c;
        for (;;) {
            if (!get_byte(c))
                throw ParseError("truncated file inside word " + std::to_string(w), offset);
            if (c == ' ') break;
            word.push_back(static_cast<char>(c));
        }
        if (word.empty()) throw ParseError("empty word at entry " + std::to_string(w), offset);

        if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size())))
            throw ParseError("truncated vector for word \"" + word + "\"",
                             offset + static_cast<std::size_t>(in.gcount()));
        offset += raw.size();

        float* rowp = storage->vectors.data() + w * dim;
        for (std::uint64_t i = 0; i < dim; ++i) rowp[i] = read_le_f32(raw.data() + i * 4);
        normalize_row(rowp, dim, word, offset);

        storage->vocab.push_back(std::move(word));
        auto [it, inserted] = storage->index.emplace(storage->vocab.back(), w);
        if (!inserted)
            throw ParseError("duplicate word \"" + storage->vocab.back() + "\"", offset);

        // optional 0x0A row terminator
        if (in.peek() == '\n') {
            int ignored;
            get_byte(ignored);
        }
    }

    EmbeddingModel m;
    m.storage_ = std::move(storage);
    m.active_ = static_cast<std::size_t>(vocab_size);
    return m;
}

void write_word2vec_binary(const EmbeddingModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + path);
    out << model.vocab_size() << ' ' << model.dim() << '\n';
    std::string buf;
    for (std::size_t w = 0; w < model.vocab_size(); ++w) {
        buf.clear();
        buf += model.word_at(w);
        buf += ' ';
        for (float f : model.row(w)) write_le_f32(f, buf);
        buf += '\n';
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
    if (!out) throw Error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// text vectors

bool detect_text_header(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file: " + path);
    std::string line;
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a >> b) || (ls >> extra)) return false;
    auto is_uint = [](const std::string& s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
    };
    return is_uint(a) && is_uint(b);
}

EmbeddingModel load_text_vectors(const std::string& path, bool has_header) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file: " + path);

    auto storage = std::make_shared<EmbeddingModel::Storage>();
    storage->name = stem_of(path);
    storage->format = SourceFormat::text_vectors;

    std::size_t line_no = 0;
    std::uint64_t declared_vocab = 0;
    std::string line;

    if (has_header) {
        if (!std::getline(in, line)) throw ParseError("missing header line", 0, 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream hs(line);
        std::uint64_t d = 0;
        if (!(hs >> declared_vocab >> d) || declared_vocab == 0 || d == 0)
            throw ParseError("bad header line \"" + line + "\"", 0, line_no);
        storage->dim = static_cast<std::size_t>(d);
    }

    std::size_t dim = storage->dim;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            if (in.peek() == EOF) break;  // tolerate one trailing blank line
            throw ParseError("blank line in vector file", 0, line_no);
        }
        const std::size_t sp = line.find(' ');
        if (sp == std::string::npos || sp == 0)
            throw ParseError("line has no word/vector separator", 0, line_no);
        std::string word = line.substr(0, sp);

        std::vector<float> vals;
        vals.reserve(dim ? dim : 16);
        const char* p = line.data() + sp + 1;
        const char* end = line.data() + line.size();
        while (p < end) {
            float f;
            auto res = std::from_chars(p, end, f);
            if (res.ec != std::errc())
                throw ParseError("bad float for word \"" + word + "\"", 0, line_no);
            vals.push_back(f);
            p = res.ptr;
            if (p < end) {
                if (*p != ' ') throw ParseError("unexpected separator", 0, line_no);
                ++p;
            }
        }
        if (dim == 0) {
            dim = vals.size();
            if (dim == 0) throw ParseError("first data line has no values", 0, line_no);
            storage->dim = dim;
        } else if (vals.size() != dim) {
            throw ParseError("expected " + std::to_string(dim) + " values, got " +
                                 std::to_string(vals.size()),
                             0, line_no);
        }

        const std::size_t row_index = storage->vocab.size();
        storage->vectors.insert(storage->vectors.end(), vals.begin(), vals.end());
        normalize_row(storage->vectors.data() + row_index * dim, dim, word, line_no);
        storage->vocab.push_back(std::move(word));
    }
    if (storage->vocab.empty()) throw ParseError("no vector rows in file", 0, line_no);
    if (has_header && storage->vocab.size() != declared_vocab)
        throw ParseError("header declares " + std::to_string(declared_vocab) + " words, file has " +
                             std::to_string(storage->vocab.size()),
                         0, line_no);

    storage->build_index();
    if (storage->index.size() != storage->vocab.size()) {
        // locate the duplicate for the error message
        std::unordered_map<std::string_view, std::size_t> seen;
        for (std::size_t i = 0; i < storage->vocab.size(); ++i) {
            if (!seen.emplace(storage->vocab[i], i).second)
                throw ParseError("duplicate word \"" + storage->vocab[i] + "\"", 0, i + 1 +
                                     (has_header ? 1 : 0));
        }
    }

    EmbeddingModel m;
    m.storage_ = std::move(storage);
    m.active_ = m.storage_->vocab.size();
    return m;
}

// ---------------------------------------------------------------------------
// cache

void write_cache(const EmbeddingModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + path);
    out.write(kCacheMagic, 4);
    write_le_uint<std::uint16_t>(kCacheVersion, out);
    write_le_uint<std::uint32_t>(static_cast<std::uint32_t>(model.dim()), out);
    write_le_uint<std::uint64_t>(model.vocab_size(), out);
    for (std::size_t w = 0; w < model.vocab_size(); ++w) {
        const std::string& word = model.word_at(w);
        if (word.size() > 0xffff) throw Error("word too long for cache format: " + word);
        write_le_uint<std::uint16_t>(static_cast<std::uint16_t>(word.size()), out);
        out.write(word.data(), static_cast<std::streamsize>(word.size()));
    }
    std::string buf;
    buf.reserve(model.dim() * 4);
    for (std::size_t w = 0; w < model.vocab_size(); ++w) {
        buf.clear();
        for (float f : model.row(w)) write_le_f32(f, buf);
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
    if (!out) throw Error("write failed: " + path);
}

EmbeddingModel read_cache(const std::string& path, const std::string& name) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CacheError("cannot open cache file: " + path);

    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kCacheMagic, 4) != 0)
        throw CacheError("bad magic bytes in " + path);
    const auto version = read_le_uint<std::uint16_t>(in, "version");
    if (version != kCacheVersion)
        throw CacheError("unsupported cache version " + std::to_string(version));
    const auto dim = read_le_uint<std::uint32_t>(in, "dim");
    const auto vocab_size = read_le_uint<std::uint64_t>(in, "vocab size");
    if (dim == 0 || vocab_size == 0) throw CacheError("cache declares an empty model");

    auto storage = std::make_shared<EmbeddingModel::Storage>();
    storage->name = name.empty() ? stem_of(path) : name;
    storage->dim = dim;
    storage->format = SourceFormat::cache;
    storage->vocab.reserve(vocab_size);
    for (std::uint64_t w = 0; w < vocab_size; ++w) {
        const auto len = read_le_uint<std::uint16_t>(in, "word length");
        std::string word(len, '\0');
        if (len && !in.read(word.data(), len)) throw CacheError("truncated cache word table");
        storage->vocab.push_back(std::move(word));
    }
    storage->vectors.resize(static_cast<std::size_t>(vocab_size) * dim);
    {
        std::vector<unsigned char> raw(static_cast<std::size_t>(dim) * 4);
        for (std::uint64_t w = 0; w < vocab_size; ++w) {
            if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size())))
                throw CacheError("truncated cache vector block");
            float* rowp = storage->vectors.data() + w * dim;
            for (std::uint32_t i = 0; i < dim; ++i) rowp[i] = read_le_f32(raw.data() + i * 4);
            const double n = numeric::norm(std::span<const float>(rowp, dim));
            if (!std::isfinite(n) || std::fabs(n - 1.0) > kUnitTolerance)
                throw CacheError("cache row " + std::to_string(w) + " is not unit length");
        }
    }
    storage->build_index();
    if (storage->index.size() != storage->vocab.size())
        throw CacheError("duplicate word in cache file");

    EmbeddingModel m;
    m.storage_ = std::move(storage);
    m.active_ = static_cast<std::size_t>(vocab_size);
    return m;
}

// ---------------------------------------------------------------------------
// ModelBuilder

ModelBuilder::ModelBuilder(std::string name, std::size_t dim) : name_(std::move(name)), dim_(dim) {
    if (dim_ == 0) throw InvalidArgument("model dimensionality must be positive");
}

void ModelBuilder::add(std::string word, std::span<const float> vector) {
    if (vector.size() != dim_) throw InvalidArgument("vector length does not match model dim");
    vocab_.push_back(std::move(word));
    vectors_.insert(vectors_.end(), vector.begin(), vector.end());
    normalize_row(vectors_.data() + (vocab_.size() - 1) * dim_, dim_, vocab_.back(), 0);
}

void ModelBuilder::add(std::string word, std::span<const double> vector) {
    std::vector<float> f(vector.size());
    for (std::size_t i = 0; i < vector.size(); ++i) f[i] = static_cast<float>(vector[i]);
    add(std::move(word), std::span<const float>(f));
}

EmbeddingModel ModelBuilder::build(SourceFormat format) {
    if (vocab_.empty()) throw InvalidArgument("model has no words");
    auto storage = std::make_shared<EmbeddingModel::Storage>();
    storage->name = name_;
    storage->dim = dim_;
    storage->vocab = std::move(vocab_);
    storage->vectors = std::move(vectors_);
    storage->format = format;
    storage->build_index();
    if (storage->index.size() != storage->vocab.size())
        throw InvalidArgument("duplicate word added to model builder");

    EmbeddingModel m;
    m.storage_ = std::move(storage);
    m.active_ = m.storage_->vocab.size();
    vocab_.clear();
    vectors_.clear();
    return m;
}

}  // namespace axisprobe::embedding
