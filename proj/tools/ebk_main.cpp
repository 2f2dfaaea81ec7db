// Command-line front end: generate bases, verify basis files, inspect the
// block/tiling structure, and report Schmidt data.
//
// Exit codes: 0 success/pass, 1 usage or I/O error, 2 unsupported
// construction, 3 verification failure.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ebk/ebk.hpp"

namespace {

using ebk::BasisFamily;
using ebk::Classification;
using ebk::CoefficientField;

int map_error_code(const ebk::error& e) {
    switch (e.code()) {
        case ebk::errc::unsupported_construction:
        case ebk::errc::degenerate_coefficient:
        case ebk::errc::tiling_not_found:
            return 2;
        default:
            return 1;
    }
}

struct GenerateArgs {
    std::vector<std::size_t> dims;
    std::size_t k = 0;
    bool k_given = false;
    std::string family;
    std::string isometry;
    std::string field = "complex";
    std::string out;
    std::string seed = "none";
};

std::optional<ebk::Isometry> resolve_isometry(const std::string& spec, std::size_t k,
                                              CoefficientField field) {
    if (spec.empty()) return std::nullopt;
    if (spec == "dft") return ebk::dft(k);
    if (spec == "od") return ebk::od(k);
    if (spec == "ud") return ebk::ud(k);
    if (spec.rfind("file:", 0) == 0) {
        ebk::Isometry x = ebk::isometry_from_json(ebk::read_json_file(spec.substr(5)));
        if (field == CoefficientField::real_field &&
            x.field != CoefficientField::real_field)
            throw ebk::invalid_input_error("--field real requires a real isometry file");
        return x;
    }
    throw ebk::invalid_input_error("--isometry must be dft, od, ud, or file:PATH");
}

int run_generate(const GenerateArgs& a) {
    if (a.seed != "none")
        throw ebk::invalid_input_error("generation is deterministic; only --seed none is accepted");
    if (a.dims.size() < 2) throw ebk::invalid_input_error("--dims needs at least two dimensions");
    const BasisFamily family = ebk::family_from_string(a.family);
    if (family == BasisFamily::custom)
        throw ebk::invalid_input_error("--family must be one of pb, ebk, sebk, meb");
    const CoefficientField field = a.field == "real" ? CoefficientField::real_field
                                                     : CoefficientField::complex_field;
    if (a.field != "real" && a.field != "complex")
        throw ebk::invalid_input_error("--field must be complex or real");

    const std::size_t dmin = *std::min_element(a.dims.begin(), a.dims.end());
    std::size_t k = a.k;
    if (!a.k_given) {
        if (family == BasisFamily::meb)
            k = dmin;
        else if (family == BasisFamily::pb)
            k = 1;
        else
            throw ebk::invalid_input_error("--k is required for this family");
    }

    ebk::json payload;
    if (a.dims.size() == 2) {
        const std::size_t d = a.dims[0], dp = a.dims[1];
        if (d > dp)
            throw ebk::invalid_input_error("--dims must be ordered d <= d'");
        if (family == BasisFamily::meb) {
            if (k != d) throw ebk::invalid_input_error("a MEB requires k = min(dims)");
            if (!a.isometry.empty())
                throw ebk::invalid_input_error("--isometry does not apply to the Weyl MEB");
            if (field == CoefficientField::real_field)
                throw ebk::unsupported_construction_error(
                    "no real MEB comes out of this construction; use --family ebk");
            payload = ebk::basis_to_json(ebk::meb(d, dp));
        } else {
            ebk::ConstructionRequest req;
            req.d = d;
            req.dprime = dp;
            req.k = k;
            req.family = family;
            req.field = field;
            req.coeffs = resolve_isometry(a.isometry, k, field);
            payload = ebk::basis_to_json(ebk::generate(req));
        }
    } else {
        BasisFamily fam = family;
        if (fam == BasisFamily::meb) {
            if (k != dmin)
                throw ebk::invalid_input_error("a multipartite MEB means k = min(dims)");
            fam = BasisFamily::sebk;
        }
        payload = ebk::basis_to_json(ebk::generate_npartite(
            a.dims, k, fam, resolve_isometry(a.isometry, k, field), field));
    }
    ebk::write_json_file(a.out, payload);
    std::cout << "wrote " << a.out << " (" << payload["states"].size() << " states, family "
              << payload["family"].get<std::string>() << ")\n";
    return 0;
}

struct VerifyArgs {
    std::string path;
    std::size_t k = 0;
    bool k_given = false;
    double tol_gram = 1e-10;
    double tol_rank = 1e-8;
    std::string format = "text";
};

void print_report_text(const ebk::VerificationReport& r) {
    std::cout << "states: " << r.state_count << " / " << r.expected_count << "\n";
    std::cout << "gram max deviation: " << r.gram_max_deviation << "\n";
    std::cout << "classification: " << ebk::to_string(r.classification) << " (claimed k = "
              << r.claimed_k << ")\n";
    if (r.failures.empty()) {
        std::cout << "all checks passed\n";
    } else {
        std::cout << "failures:\n";
        for (const auto& f : r.failures) std::cout << "  - " << f << "\n";
    }
}

int run_verify(const VerifyArgs& a) {
    const ebk::LoadedBasis file = ebk::basis_from_json(ebk::read_json_file(a.path),
                                                       /*strict_norm=*/false);
    const std::size_t k = a.k_given ? a.k : file.k;
    ebk::VerifyTolerances tols;
    tols.gram = a.tol_gram;
    tols.rank = a.tol_rank;
    tols.zero = a.tol_rank * 1e-2;
    ebk::VerificationReport report =
        file.multipartite
            ? ebk::verify_multipartite_tensors(file.dims, file.tensors, k, tols)
            : ebk::verify_states(file.dims[0], file.dims[1], file.bipartite_states, k, tols);
    if (a.format == "json")
        std::cout << ebk::dump_deterministic(ebk::report_to_json(report));
    else
        print_report_text(report);
    return ebk::classification_satisfies(report.classification, file.family) ? 0 : 3;
}

struct TileArgs {
    std::vector<std::size_t> dims;
    std::size_t k = 0;
    std::string format = "text";
};

void print_tile_text(const ebk::BlockDecomposition& deco, const ebk::Tiling& tiling) {
    const std::size_t d = deco.d, dp = deco.dprime;
    std::vector<std::string> label(d * dp, "...");
    char block_name = 'A';
    const ebk::GridBlock* corner = nullptr;
    for (const auto& b : deco.blocks) {
        if (b.kind == ebk::BlockKind::corner) {
            corner = &b;
            continue;
        }
        for (std::size_t r = 0; r < b.rows; ++r)
            for (std::size_t c = 0; c < b.cols; ++c)
                label[(b.row0 + r) * dp + b.col0 + c] = std::string(1, block_name) + "  ";
        ++block_name;
    }
    for (std::size_t i = 0; i < tiling.diagonals.size(); ++i)
        for (const auto& [r, c] : tiling.diagonals[i]) {
            std::string tag = "d" + std::to_string(i);
            tag.resize(3, ' ');
            label[(corner->row0 + r) * dp + corner->col0 + c] = tag;
        }
    for (std::size_t i = 0; i < tiling.l_patterns.size(); ++i)
        for (const auto& [r, c] : tiling.l_patterns[i].cells()) {
            std::string tag = "L" + std::to_string(i);
            tag.resize(3, ' ');
            label[(corner->row0 + r) * dp + corner->col0 + c] = tag;
        }
    std::cout << "blocks: cyclic marked A/B, corner pieces d<i> (diagonals) and L<i>\n";
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < dp; ++c) std::cout << label[r * dp + c] << ' ';
        std::cout << "\n";
    }
}

int run_tile(const TileArgs& a) {
    if (a.dims.size() != 2) throw ebk::invalid_input_error("--dims must be d,dprime");
    const std::size_t d = a.dims[0], dp = a.dims[1];
    if (a.k == 0 || d == 0 || dp == 0 || a.k > std::min(d, dp) || d > dp)
        throw ebk::invalid_input_error("tile needs 1 <= k <= d <= d'");
    if ((d * dp) % a.k == 0) {
        if (a.format == "json") {
            ebk::json out;
            out["cyclic_only"] = true;
            out["dims"] = a.dims;
            out["k"] = a.k;
            std::cout << ebk::dump_deterministic(out);
        } else {
            std::cout << "cyclic only\n";
        }
        return 0;
    }
    const ebk::BlockDecomposition deco = ebk::block_decompose(d, dp, a.k);
    const ebk::GridBlock& corner = deco.blocks.back();
    const ebk::Tiling tiling = ebk::tile_corner(corner.rows, corner.cols, a.k);
    if (a.format == "json") {
        ebk::json out;
        out["decomposition"] = ebk::decomposition_to_json(deco);
        out["corner_tiling"] = ebk::tiling_to_json(tiling);
        std::cout << ebk::dump_deterministic(out);
    } else {
        print_tile_text(deco, tiling);
    }
    return 0;
}

struct SchmidtArgs {
    std::string path;
    double tol_rank = 1e-8;
    std::string format = "text";
};

int run_schmidt(const SchmidtArgs& a) {
    const ebk::LoadedBasis file = ebk::basis_from_json(ebk::read_json_file(a.path),
                                                       /*strict_norm=*/false);
    ebk::json rows = ebk::json::array();
    for (std::size_t i = 0; i < file.tensors.size(); ++i) {
        ebk::json row;
        row["index"] = i;
        if (file.multipartite) {
            const ebk::GhzCheckResult g =
                ebk::ghz_check(file.tensors[i], file.dims, file.k, a.tol_rank);
            row["schmidt_number"] = g.success ? g.rank_found : 0;
            row["coefficients"] = g.weights;
            row["product_decomposable"] = g.success;
        } else {
            const ebk::SchmidtData s =
                ebk::schmidt(file.bipartite_states[i], a.tol_rank);
            row["schmidt_number"] = s.schmidt_number;
            row["coefficients"] = s.coefficients;
        }
        rows.push_back(std::move(row));
    }
    if (a.format == "json") {
        ebk::json out;
        out["dims"] = file.dims;
        out["per_state"] = rows;
        std::cout << ebk::dump_deterministic(out);
    } else {
        for (const auto& row : rows) {
            std::cout << "state " << row["index"] << ": S_r = " << row["schmidt_number"]
                      << ", coefficients";
            for (const auto& c : row["coefficients"]) std::cout << ' ' << c;
            std::cout << "\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entangled bases with fixed Schmidt number: generate, verify, tile, schmidt"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* cmd_gen = app.add_subcommand("generate", "construct a basis and write it as JSON");
    cmd_gen->add_option("--dims", gen.dims, "party dimensions, e.g. 2,3 or 2,2,2")
        ->required()
        ->delimiter(',');
    auto* kopt = cmd_gen->add_option("--k", gen.k, "target Schmidt number");
    cmd_gen->add_option("--family", gen.family, "pb | ebk | sebk | meb")->required();
    cmd_gen->add_option("--isometry", gen.isometry, "dft | od | ud | file:PATH");
    cmd_gen->add_option("--field", gen.field, "complex | real");
    cmd_gen->add_option("--out", gen.out, "output path")->required();
    cmd_gen->add_option("--seed", gen.seed, "must be 'none'; output is deterministic");

    VerifyArgs ver;
    auto* cmd_ver = app.add_subcommand("verify", "verify a basis file and print a report");
    cmd_ver->add_option("path", ver.path, "basis file")->required();
    auto* vkopt = cmd_ver->add_option("--k", ver.k, "claimed Schmidt number (default: file's k)");
    cmd_ver->add_option("--tol-gram", ver.tol_gram, "orthonormality tolerance");
    cmd_ver->add_option("--tol-rank", ver.tol_rank, "rank tolerance");
    cmd_ver->add_option("--format", ver.format, "text | json");

    TileArgs tile;
    auto* cmd_tile = app.add_subcommand("tile", "show the block decomposition and corner tiling");
    cmd_tile->add_option("--dims", tile.dims, "d,dprime")->required()->delimiter(',');
    cmd_tile->add_option("--k", tile.k, "target Schmidt number")->required();
    cmd_tile->add_option("--format", tile.format, "text | json");

    SchmidtArgs sch;
    auto* cmd_sch = app.add_subcommand("schmidt", "per-state Schmidt data of a basis file");
    cmd_sch->add_option("path", sch.path, "basis file")->required();
    cmd_sch->add_option("--tol-rank", sch.tol_rank, "rank tolerance");
    cmd_sch->add_option("--format", sch.format, "text | json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (cmd_gen->parsed()) {
            gen.k_given = kopt->count() > 0;
            return run_generate(gen);
        }
        if (cmd_ver->parsed()) {
            ver.k_given = vkopt->count() > 0;
            return run_verify(ver);
        }
        if (cmd_tile->parsed()) return run_tile(tile);
        if (cmd_sch->parsed()) return run_schmidt(sch);
    } catch (const ebk::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return map_error_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
