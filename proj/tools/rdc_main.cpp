// rdc - reference-based differential compressor for sets of homologous DNA
// sequences. Subcommands: compress | decompress | fetch | stats | inspect | gen.
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rdc/rdc.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::vector<std::uint8_t> read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        std::string s = ss.str();
        return {s.begin(), s.end()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw rdc::Error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string s = ss.str();
    return {s.begin(), s.end()};
}

// Write via a temp file and rename so a failure never leaves a partial output.
void write_output(const std::string& path, const void* data, std::size_t size) {
    if (path == "-") {
        std::cout.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
        std::cout.flush();
        if (!std::cout) throw rdc::Error("write to stdout failed");
        return;
    }
    std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw rdc::Error("cannot open '" + tmp + "' for writing");
        out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
        if (!out) {
            std::remove(tmp.c_str());
            throw rdc::Error("write to '" + tmp + "' failed");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw rdc::Error("cannot rename '" + tmp + "' to '" + path + "'");
    }
}

void write_output(const std::string& path, const std::vector<std::uint8_t>& data) {
    write_output(path, data.data(), data.size());
}
void write_output(const std::string& path, const std::string& data) {
    write_output(path, data.data(), data.size());
}

void print_report(std::ostream& os, const rdc::CompressionReport& r) {
    char buf[256];
    os << "  uncompressed        " << r.uncompressed_bytes << " B (1 byte/base)\n";
    os << "  2-bit baseline      " << r.two_bit_baseline_bytes << " B\n";
    os << "  compressed payload  " << r.compressed_bytes << " B (differences + locations)\n";
    os << "  differences         " << r.differences_bytes << " B\n";
    os << "  locations           " << r.locations_bytes << " B\n";
    os << "  archive on disk     " << r.archive_bytes << " B (container + reference)\n";
    std::snprintf(buf, sizeof buf,
                  "  ratio %.6f   saving %.2f%%   fold %.2f\n",
                  r.compression_ratio, 100.0 * r.space_saving, r.fold);
    os << buf;
    os << "uncompressed_bytes=" << r.uncompressed_bytes << "\n"
       << "compressed_bytes=" << r.compressed_bytes << "\n"
       << "differences_bytes=" << r.differences_bytes << "\n"
       << "locations_bytes=" << r.locations_bytes << "\n"
       << "archive_bytes=" << r.archive_bytes << "\n"
       << "two_bit_baseline_bytes=" << r.two_bit_baseline_bytes << "\n";
    std::snprintf(buf, sizeof buf,
                  "compression_ratio=%.9f\nspace_saving=%.9f\nfold=%.6f\n",
                  r.compression_ratio, r.space_saving, r.fold);
    os << buf;
}

rdc::CompressionReport report_from_reader(const rdc::ArchiveReader& reader,
                                          std::uint64_t archive_size) {
    std::uint64_t bases = reader.reference().bases.size();
    std::uint64_t two_bit = (reader.reference().bases.size() + 3) / 4;
    std::uint64_t diffs = 0, locs = 0;
    for (std::size_t i = 0; i < reader.directory().size(); ++i) {
        rdc::CompressedRecord rec = reader.read_record(i);
        bases += rec.target_length;
        two_bit += (rec.target_length + 3) / 4;
        diffs += rec.ops_payload.size();
        locs += rec.locations_payload.size();
    }
    rdc::CompressionReport r = rdc::make_report(bases, diffs + locs);
    r.two_bit_baseline_bytes = two_bit;
    r.differences_bytes = diffs;
    r.locations_bytes = locs;
    r.archive_bytes = archive_size;
    return r;
}

struct CompressOptions {
    std::string input, output;
    std::string ref_id;
    std::string backend = "huffman";
    std::string align_mode = "semi-global";
    bool compare = false;
    rdc::AlignParams params;
};

int run_compress(const CompressOptions& opt) {
    std::vector<std::uint8_t> raw = read_input(opt.input);
    rdc::SequenceSet set = rdc::parse_fasta(
        std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size()));
    if (!opt.ref_id.empty()) {
        bool found = false;
        for (std::size_t i = 0; i < set.sequences.size(); ++i)
            if (set.sequences[i].id == opt.ref_id) {
                set.reference_index = i;
                found = true;
                break;
            }
        if (!found) throw rdc::UnknownId(opt.ref_id);
    }
    rdc::AlignParams params = opt.params;
    params.mode =
        opt.align_mode == "global" ? rdc::AlignMode::global : rdc::AlignMode::semi_global;
    rdc::Backend backend =
        opt.backend == "deflate" ? rdc::Backend::deflate : rdc::Backend::huffman;

    rdc::Archive ar = rdc::compress_set(set, params, backend);
    std::vector<std::uint8_t> bytes = rdc::write_archive(ar);
    write_output(opt.output, bytes);

    std::ostream& os = (opt.output == "-") ? std::cerr : std::cout;
    os << "archive: " << opt.output << " (" << bytes.size() << " B, backend "
       << (backend == rdc::Backend::huffman ? "huffman" : "deflate") << ")\n";
    print_report(os, rdc::report(set, ar));

    if (opt.compare) {
        rdc::Backend other =
            backend == rdc::Backend::huffman ? rdc::Backend::deflate : rdc::Backend::huffman;
        rdc::Archive alt = rdc::compress_set(set, params, other);
        rdc::CompressionReport a = rdc::report(set, ar);
        rdc::CompressionReport b = rdc::report(set, alt);
        const rdc::CompressionReport& huff = backend == rdc::Backend::huffman ? a : b;
        const rdc::CompressionReport& defl = backend == rdc::Backend::huffman ? b : a;
        os << "backend comparison (differences payload):\n"
           << "  huffman  " << huff.differences_bytes << " B\n"
           << "  deflate  " << defl.differences_bytes << " B\n"
           << "differences_bytes_huffman=" << huff.differences_bytes << "\n"
           << "differences_bytes_deflate=" << defl.differences_bytes << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reference-based differential compressor for homologous DNA sets"};
    app.require_subcommand(1);

    CompressOptions copt;
    CLI::App* c = app.add_subcommand("compress", "compress a FASTA file into an archive");
    c->add_option("input", copt.input, "input FASTA file, or - for stdin")->required();
    c->add_option("output", copt.output, "output archive, or - for stdout")->required();
    c->add_option("--ref-id", copt.ref_id, "record id to use as reference (default: first)");
    c->add_option("--backend", copt.backend, "op-code coder")
        ->check(CLI::IsMember({"huffman", "deflate"}));
    c->add_flag("--compare", copt.compare, "also report the other backend's differences size");
    c->add_option("--align", copt.align_mode, "alignment mode")
        ->check(CLI::IsMember({"global", "semi-global"}));
    c->add_option("--match", copt.params.match, "match score");
    c->add_option("--mismatch", copt.params.mismatch, "mismatch score");
    c->add_option("--gap", copt.params.gap, "gap score");

    std::string d_in, d_out = "-";
    CLI::App* d = app.add_subcommand("decompress", "restore the FASTA set from an archive");
    d->add_option("input", d_in, "input archive, or - for stdin")->required();
    d->add_option("output", d_out, "output FASTA, or - for stdout");

    std::string f_in, f_id, f_out = "-";
    CLI::App* f = app.add_subcommand("fetch", "decode a single sequence from an archive");
    f->add_option("input", f_in, "input archive")->required();
    f->add_option("--id", f_id, "sequence id to fetch")->required();
    f->add_option("output", f_out, "output FASTA, or - for stdout");

    std::string s_in;
    CLI::App* s = app.add_subcommand("stats", "print the compression report for an archive");
    s->add_option("input", s_in, "input archive")->required();

    std::string i_in;
    CLI::App* i = app.add_subcommand("inspect", "dump archive header and record directory");
    i->add_option("input", i_in, "input archive")->required();

    struct {
        std::string output = "-";
        std::uint64_t len = 1000;
        std::uint32_t n = 10;
        double snp = 0.01, ins = 0.0, del = 0.0;
        std::uint64_t seed = 0;
    } g_opt;
    CLI::App* g = app.add_subcommand("gen", "generate a synthetic FASTA dataset");
    g->add_option("output", g_opt.output, "output FASTA, or - for stdout");
    g->add_option("--len", g_opt.len, "reference length in bases");
    g->add_option("--n", g_opt.n, "number of mutated targets");
    g->add_option("--snp", g_opt.snp, "per-base substitution rate");
    g->add_option("--ins", g_opt.ins, "per-base insertion rate");
    g->add_option("--del", g_opt.del, "per-base deletion rate");
    g->add_option("--seed", g_opt.seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*c) return run_compress(copt);
        if (*d) {
            auto bytes = read_input(d_in);
            write_output(d_out, rdc::write_fasta(rdc::decompress_set(bytes)));
            return kExitOk;
        }
        if (*f) {
            auto bytes = read_input(f_in);
            rdc::SequenceSet one;
            one.sequences.push_back(rdc::decompress_one(bytes, f_id));
            write_output(f_out, rdc::write_fasta(one));
            return kExitOk;
        }
        if (*s) {
            auto bytes = read_input(s_in);
            rdc::MemorySource src(bytes);
            rdc::ArchiveReader reader(src);
            print_report(std::cout, report_from_reader(reader, bytes.size()));
            return kExitOk;
        }
        if (*i) {
            auto bytes = read_input(i_in);
            rdc::MemorySource src(bytes);
            rdc::ArchiveReader reader(src);
            std::cout << "format_version=" << int(reader.format_version()) << "\n"
                      << "backend="
                      << (reader.backend() == rdc::Backend::huffman ? "huffman" : "deflate")
                      << "\n"
                      << "reference_id=" << reader.reference().id << "\n"
                      << "reference_bases=" << reader.reference().bases.size() << "\n"
                      << "reference_index=" << reader.reference_index() << "\n"
                      << "record_count=" << reader.directory().size() << "\n";
            if (reader.backend() == rdc::Backend::huffman) {
                std::cout << "huffman_lengths=";
                for (int k = 0; k < rdc::kNumOpSymbols; ++k)
                    std::cout << (k ? "," : "") << int(reader.huffman_lengths()[k]);
                std::cout << "\n";
            }
            for (std::size_t r = 0; r < reader.directory().size(); ++r) {
                const auto& e = reader.directory()[r];
                rdc::CompressedRecord rec = reader.read_record(r);
                std::cout << "record " << r << ": id=" << rec.target_id
                          << " offset=" << e.offset << " bytes=" << e.byte_len
                          << " target_length=" << rec.target_length << " n_ops=" << rec.n_ops
                          << " ops_payload=" << rec.ops_payload.size()
                          << " locations_payload=" << rec.locations_payload.size() << "\n";
            }
            return kExitOk;
        }
        if (*g) {
            rdc::SequenceSet set = rdc::generate_synthetic_set(g_opt.len, g_opt.n, g_opt.snp,
                                                               g_opt.ins, g_opt.del, g_opt.seed);
            write_output(g_opt.output, rdc::write_fasta(set));
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
