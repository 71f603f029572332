#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rdc/align.hpp"
#include "rdc/deflate.hpp"
#include "rdc/diff.hpp"
#include "rdc/errors.hpp"
#include "rdc/huffman.hpp"
#include "rdc/sequence.hpp"
#include "rdc/varint.hpp"

namespace rdc {

enum class Backend : std::uint8_t { huffman = 0, deflate = 1 };

inline constexpr char kMagic[4] = {'R', 'D', 'C', 'A'};
inline constexpr std::uint8_t kFormatVersion = 1;

/// One target sequence as stored: entropy-coded op-codes plus a DEFLATE stream
/// of delta/varint-coded locations.
struct CompressedRecord {
    std::string target_id;
    std::uint64_t target_length = 0;
    std::uint64_t n_ops = 0;
    std::vector<std::uint8_t> ops_payload;
    std::vector<std::uint8_t> locations_payload;
};

struct Archive {
    std::uint8_t format_version = kFormatVersion;
    Backend backend = Backend::huffman;
    Sequence reference;
    std::uint16_t reference_index = 0;  // position of the reference in the original set
    std::array<std::uint8_t, kNumOpSymbols> huffman_lengths{};
    std::vector<CompressedRecord> records;
};

// ---------------------------------------------------------------------------
// little-endian primitives

namespace detail {

inline void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(v & 0xFF);
    out.push_back(v >> 8);
}
inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xFF);
}
inline void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back((v >> (8 * i)) & 0xFF);
}

struct Cursor {
    std::span<const std::uint8_t> data;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > data.size()) throw CorruptStream("archive truncated");
    }
    std::uint8_t u8() { need(1); return data[pos++]; }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = data[pos] | (std::uint16_t(data[pos + 1]) << 8);
        pos += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(data[pos + i]) << (8 * i);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(data[pos + i]) << (8 * i);
        pos += 8;
        return v;
    }
    std::span<const std::uint8_t> bytes(std::size_t n) {
        need(n);
        auto s = data.subspan(pos, n);
        pos += n;
        return s;
    }
    std::string str(std::size_t n) {
        auto s = bytes(n);
        return std::string(s.begin(), s.end());
    }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// record payload coding

namespace detail {

inline std::vector<std::uint8_t> encode_ops(const std::vector<OpCode>& ops, Backend backend,
                                            const HuffmanModel& model) {
    if (backend == Backend::huffman) return huffman_encode(ops, model).bytes;
    return deflate_compress(ops);
}

inline std::vector<std::uint8_t> encode_locations(const std::vector<std::uint64_t>& locations) {
    return deflate_compress(varint_encode(delta_encode(locations)));
}

inline std::vector<OpCode> decode_ops(const CompressedRecord& rec, Backend backend,
                                      const HuffmanModel& model) {
    if (backend == Backend::huffman) {
        BitReader reader(rec.ops_payload.data(), std::uint64_t(rec.ops_payload.size()) * 8);
        return huffman_decode(reader, model, rec.n_ops);
    }
    std::vector<std::uint8_t> ops = deflate_decompress(rec.ops_payload);
    if (ops.size() != rec.n_ops) throw CorruptStream("op count mismatch in record");
    for (std::uint8_t op : ops)
        if (op < 1 || op > 8) throw CorruptStream("op-code out of range in record");
    return ops;
}

inline std::vector<std::uint64_t> decode_locations(const CompressedRecord& rec) {
    return delta_decode(varint_decode(deflate_decompress(rec.locations_payload), rec.n_ops));
}

/// Record bytes as laid out on disk, trailing crc32 included.
inline std::vector<std::uint8_t> serialize_record(const CompressedRecord& rec) {
    std::vector<std::uint8_t> out;
    put_u16(out, static_cast<std::uint16_t>(rec.target_id.size()));
    out.insert(out.end(), rec.target_id.begin(), rec.target_id.end());
    put_u64(out, rec.target_length);
    put_u64(out, rec.n_ops);
    put_u64(out, rec.ops_payload.size());
    out.insert(out.end(), rec.ops_payload.begin(), rec.ops_payload.end());
    put_u64(out, rec.locations_payload.size());
    out.insert(out.end(), rec.locations_payload.begin(), rec.locations_payload.end());
    put_u32(out, crc32_of(out));
    return out;
}

inline CompressedRecord parse_record(std::span<const std::uint8_t> bytes) {
    Cursor c{bytes};
    CompressedRecord rec;
    std::uint16_t id_len = c.u16();
    rec.target_id = c.str(id_len);
    rec.target_length = c.u64();
    rec.n_ops = c.u64();
    std::uint64_t ops_len = c.u64();
    auto ops = c.bytes(ops_len);
    rec.ops_payload.assign(ops.begin(), ops.end());
    std::uint64_t loc_len = c.u64();
    auto loc = c.bytes(loc_len);
    rec.locations_payload.assign(loc.begin(), loc.end());
    std::uint32_t stored = c.u32();
    if (c.pos != bytes.size()) throw CorruptStream("trailing bytes in record");
    if (stored != crc32_of(bytes.first(bytes.size() - 4)))
        throw CorruptStream("record crc mismatch for '" + rec.target_id + "'");
    return rec;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// pipeline

inline DiffRecord diff_against_reference(const Sequence& reference, const Sequence& target,
                                         const AlignParams& params) {
    return record_diffs(align(reference, target, params), target.id);
}

/// Align, diff and entropy-code every non-reference sequence. The Huffman
/// model, when that backend is selected, is built from op frequencies pooled
/// across all records and applied to each.
inline Archive compress_set(const SequenceSet& set, const AlignParams& params = {},
                            Backend backend = Backend::huffman) {
    if (set.sequences.empty()) throw EmptyInput();
    if (set.reference_index >= set.sequences.size())
        throw Error("reference_index out of range");

    Archive ar;
    ar.backend = backend;
    ar.reference = set.sequences[set.reference_index];
    ar.reference_index = static_cast<std::uint16_t>(set.reference_index);

    std::vector<DiffRecord> diffs;
    std::array<std::uint64_t, kNumOpSymbols> pooled{};
    for (std::size_t i = 0; i < set.sequences.size(); ++i) {
        if (i == set.reference_index) continue;
        DiffRecord d = diff_against_reference(ar.reference, set.sequences[i], params);
        for (OpCode op : d.ops) ++pooled[op - 1];
        diffs.push_back(std::move(d));
    }

    HuffmanModel model;
    if (backend == Backend::huffman) {
        bool any = false;
        for (std::uint64_t f : pooled) any = any || f > 0;
        if (any) {
            model = build_huffman(pooled);
            ar.huffman_lengths = model.code_lengths;
        }
    }

    for (DiffRecord& d : diffs) {
        CompressedRecord rec;
        rec.target_id = d.target_id;
        rec.target_length = d.target_length;
        rec.n_ops = d.ops.size();
        rec.ops_payload = detail::encode_ops(d.ops, backend, model);
        rec.locations_payload = detail::encode_locations(d.locations);
        ar.records.push_back(std::move(rec));
    }
    return ar;
}

inline std::vector<std::uint8_t> write_archive(const Archive& ar) {
    std::vector<std::uint8_t> head;
    head.insert(head.end(), kMagic, kMagic + 4);
    head.push_back(ar.format_version);
    head.push_back(static_cast<std::uint8_t>(ar.backend));
    detail::put_u16(head, ar.reference_index);
    detail::put_u16(head, static_cast<std::uint16_t>(ar.reference.id.size()));
    head.insert(head.end(), ar.reference.id.begin(), ar.reference.id.end());
    detail::put_u64(head, ar.reference.bases.size());
    std::vector<std::uint8_t> packed = pack_2bit(ar.reference.bases);
    head.insert(head.end(), packed.begin(), packed.end());
    head.insert(head.end(), ar.huffman_lengths.begin(), ar.huffman_lengths.end());
    detail::put_u32(head, static_cast<std::uint32_t>(ar.records.size()));

    std::vector<std::vector<std::uint8_t>> blobs;
    blobs.reserve(ar.records.size());
    for (const CompressedRecord& rec : ar.records)
        blobs.push_back(detail::serialize_record(rec));

    // directory of (absolute offset, byte length); records start after the
    // header crc32
    std::uint64_t offset = head.size() + 16 * ar.records.size() + 4;
    for (const auto& blob : blobs) {
        detail::put_u64(head, offset);
        detail::put_u64(head, blob.size());
        offset += blob.size();
    }
    // header crc covers everything before it (magic through directory)
    std::uint32_t header_crc = crc32_of(head);
    detail::put_u32(head, header_crc);
    std::vector<std::uint8_t> out = std::move(head);
    for (const auto& blob : blobs) out.insert(out.end(), blob.begin(), blob.end());
    return out;
}

// ---------------------------------------------------------------------------
// random-access reading

/// Random-access byte source; lets callers account for exactly which bytes a
/// decode touches.
struct ByteSource {
    virtual ~ByteSource() = default;
    virtual std::uint64_t size() const = 0;
    virtual void read(std::uint64_t offset, std::span<std::uint8_t> out) const = 0;
};

struct MemorySource final : ByteSource {
    std::span<const std::uint8_t> data;
    explicit MemorySource(std::span<const std::uint8_t> d) : data(d) {}
    std::uint64_t size() const override { return data.size(); }
    void read(std::uint64_t offset, std::span<std::uint8_t> out) const override {
        if (offset + out.size() > data.size()) throw CorruptStream("read past end of archive");
        std::memcpy(out.data(), data.data() + offset, out.size());
    }
};

/// Wraps another source and records every byte range touched.
struct CountingSource final : ByteSource {
    const ByteSource& inner;
    mutable std::uint64_t bytes_read = 0;
    mutable std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;  // (offset, len)

    explicit CountingSource(const ByteSource& s) : inner(s) {}
    std::uint64_t size() const override { return inner.size(); }
    void read(std::uint64_t offset, std::span<std::uint8_t> out) const override {
        inner.read(offset, out);
        bytes_read += out.size();
        ranges.emplace_back(offset, out.size());
    }
};

struct DirectoryEntry {
    std::uint64_t offset = 0;
    std::uint64_t byte_len = 0;
};

class ArchiveReader {
public:
    explicit ArchiveReader(const ByteSource& source) : source_(source) { read_header(); }

    std::uint8_t format_version() const { return version_; }
    Backend backend() const { return backend_; }
    const Sequence& reference() const { return reference_; }
    std::uint16_t reference_index() const { return ref_index_; }
    const std::array<std::uint8_t, kNumOpSymbols>& huffman_lengths() const { return lengths_; }
    const std::vector<DirectoryEntry>& directory() const { return directory_; }

    CompressedRecord read_record(std::size_t index) const {
        const DirectoryEntry& e = directory_.at(index);
        std::vector<std::uint8_t> buf(e.byte_len);
        source_.read(e.offset, buf);
        return detail::parse_record(buf);
    }

    Sequence decode_record(std::size_t index) const {
        return decode(read_record(index));
    }

    /// Locate a record by scanning only the id prefix of each record; decode
    /// just the matching record's payload.
    Sequence fetch(const std::string& id) const {
        if (id == reference_.id) return reference_;
        for (std::size_t i = 0; i < directory_.size(); ++i) {
            if (record_id(i) == id) return decode_record(i);
        }
        throw UnknownId(id);
    }

    std::string record_id(std::size_t index) const {
        const DirectoryEntry& e = directory_.at(index);
        std::uint8_t len_buf[2];
        if (e.byte_len < 2) throw CorruptStream("record too short");
        source_.read(e.offset, len_buf);
        std::uint16_t id_len = len_buf[0] | (std::uint16_t(len_buf[1]) << 8);
        if (2 + std::uint64_t(id_len) > e.byte_len) throw CorruptStream("record too short");
        std::vector<std::uint8_t> idb(id_len);
        source_.read(e.offset + 2, idb);
        return std::string(idb.begin(), idb.end());
    }

    SequenceSet decompress_all() const {
        SequenceSet set;
        for (std::size_t i = 0; i < directory_.size(); ++i)
            set.sequences.push_back(decode_record(i));
        std::size_t ref_at = std::min<std::size_t>(ref_index_, set.sequences.size());
        set.sequences.insert(set.sequences.begin() + ref_at, reference_);
        set.reference_index = ref_at;
        return set;
    }

private:
    Sequence decode(const CompressedRecord& rec) const {
        DiffRecord diff;
        diff.target_id = rec.target_id;
        diff.target_length = rec.target_length;
        diff.ops = detail::decode_ops(rec, backend_, model_);
        diff.locations = detail::decode_locations(rec);
        return reconstruct(reference_, diff);
    }

    void read_header() {
        // fixed prefix through ref_id_len
        std::uint8_t fixed[10];
        source_.read(0, fixed);
        if (std::memcmp(fixed, kMagic, 4) != 0) throw CorruptStream("bad archive magic");
        version_ = fixed[4];
        if (version_ != kFormatVersion)
            throw CorruptStream("unsupported archive version " + std::to_string(version_));
        if (fixed[5] > 1) throw CorruptStream("unknown backend");
        backend_ = static_cast<Backend>(fixed[5]);
        ref_index_ = fixed[6] | (std::uint16_t(fixed[7]) << 8);
        std::uint16_t id_len = fixed[8] | (std::uint16_t(fixed[9]) << 8);

        std::vector<std::uint8_t> buf(id_len + 8);
        source_.read(10, buf);
        reference_.id.assign(buf.begin(), buf.begin() + id_len);
        std::uint64_t n_bases = 0;
        for (int i = 0; i < 8; ++i) n_bases |= std::uint64_t(buf[id_len + i]) << (8 * i);
        if (n_bases == 0) throw CorruptStream("empty reference");
        std::uint64_t packed_len = (n_bases + 3) / 4;
        std::uint64_t pos = 10 + id_len + 8;

        std::vector<std::uint8_t> packed(packed_len);
        source_.read(pos, packed);
        pos += packed_len;
        reference_.bases = unpack_2bit(packed, n_bases);

        std::vector<std::uint8_t> tail(kNumOpSymbols + 4);
        source_.read(pos, tail);
        pos += tail.size();
        std::copy(tail.begin(), tail.begin() + kNumOpSymbols, lengths_.begin());
        std::uint32_t record_count = 0;
        for (int i = 0; i < 4; ++i) record_count |= std::uint32_t(tail[kNumOpSymbols + i]) << (8 * i);

        std::vector<std::uint8_t> dir(16 * std::uint64_t(record_count) + 4);
        if (pos + dir.size() > source_.size()) throw CorruptStream("archive truncated");
        source_.read(pos, dir);
        detail::Cursor c{{dir.data(), dir.size()}};
        for (std::uint32_t i = 0; i < record_count; ++i) {
            DirectoryEntry e{c.u64(), c.u64()};
            if (e.offset + e.byte_len > source_.size())
                throw CorruptStream("directory entry out of range");
            directory_.push_back(e);
        }
        std::uint32_t stored_crc = c.u32();

        // header crc covers everything before it; re-read the span as one block
        std::vector<std::uint8_t> head(pos + 16 * std::uint64_t(record_count));
        source_.read(0, head);
        if (stored_crc != crc32_of(head)) throw CorruptStream("header crc mismatch");

        bool any_len = false;
        for (std::uint8_t l : lengths_) any_len = any_len || l > 0;
        if (backend_ == Backend::huffman && any_len) model_ = model_from_lengths(lengths_);
    }

    const ByteSource& source_;
    std::uint8_t version_ = 0;
    Backend backend_ = Backend::huffman;
    Sequence reference_;
    std::uint16_t ref_index_ = 0;
    std::array<std::uint8_t, kNumOpSymbols> lengths_{};
    HuffmanModel model_;
    std::vector<DirectoryEntry> directory_;
};

inline SequenceSet decompress_set(std::span<const std::uint8_t> archive_bytes) {
    MemorySource src(archive_bytes);
    return ArchiveReader(src).decompress_all();
}

inline Sequence decompress_one(std::span<const std::uint8_t> archive_bytes,
                               const std::string& target_id) {
    MemorySource src(archive_bytes);
    return ArchiveReader(src).fetch(target_id);
}

// ---------------------------------------------------------------------------
// metrics

struct CompressionReport {
    std::uint64_t uncompressed_bytes = 0;   // 1 byte per base, GenBank flat-text baseline
    std::uint64_t compressed_bytes = 0;     // differences + locations payloads
    std::uint64_t differences_bytes = 0;    // sum of ops payloads
    std::uint64_t locations_bytes = 0;      // sum of location payloads
    std::uint64_t archive_bytes = 0;        // full serialized archive, container included
    std::uint64_t two_bit_baseline_bytes = 0;  // secondary baseline at 2 bits/base
    double compression_ratio = 0.0;
    double space_saving = 0.0;
    double fold = 0.0;
};

inline CompressionReport make_report(std::uint64_t uncompressed_bytes,
                                     std::uint64_t compressed_bytes) {
    CompressionReport r;
    r.uncompressed_bytes = uncompressed_bytes;
    r.compressed_bytes = compressed_bytes;
    r.compression_ratio =
        static_cast<double>(compressed_bytes) / static_cast<double>(uncompressed_bytes);
    r.space_saving = 1.0 - r.compression_ratio;
    r.fold = static_cast<double>(uncompressed_bytes) / static_cast<double>(compressed_bytes);
    return r;
}

/// Sizes and ratios for an archive built from `set`. Following the paper's
/// accounting, the compressed size is the sum of the two payload streams
/// (differences + locations); the container and the packed reference are
/// reported separately as archive_bytes.
inline CompressionReport report(const SequenceSet& set, const Archive& archive) {
    std::uint64_t uncompressed = 0, two_bit = 0;
    for (const Sequence& s : set.sequences) {
        uncompressed += s.bases.size();
        two_bit += (s.bases.size() + 3) / 4;
    }
    std::uint64_t diffs = 0, locs = 0;
    for (const CompressedRecord& rec : archive.records) {
        diffs += rec.ops_payload.size();
        locs += rec.locations_payload.size();
    }
    CompressionReport r = make_report(uncompressed, diffs + locs);
    r.differences_bytes = diffs;
    r.locations_bytes = locs;
    r.archive_bytes = write_archive(archive).size();
    r.two_bit_baseline_bytes = two_bit;
    return r;
}

}  // namespace rdc
