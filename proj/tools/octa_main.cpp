// octa: reconstruct convex octahedra from edge-length developments and
// decide affine equivalence between two of them.
//
// Exit codes: 0 computation completed (and succeeded, where applicable),
// 2 invalid input, 3 reconstruction did not yield a unique realization.
// With --exit-on-verdict, decide maps its verdict to 0/1/4 instead.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "octaffine/genkit.hpp"
#include "octaffine/json_io.hpp"

using nlohmann::json;

namespace {

struct Common {
    std::string output;
    bool pretty = false;
    octa::Tolerances tol;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("-o,--output", c.output, "write the JSON result here instead of stdout");
    cmd->add_flag("--pretty", c.pretty, "indent the JSON output");
    cmd->add_option("--tol-rel", c.tol.eps_rel, "equality residual bound")
        ->check(CLI::Range(1e-300, 1.0));
    cmd->add_option("--tol-geom", c.tol.eps_geom, "strict-margin band")
        ->check(CLI::Range(1e-300, 1.0));
    cmd->add_option("--alpha-yes", c.tol.alpha_yes, "spread bound for 'equivalent'")
        ->check(CLI::Range(1e-300, 1.0));
    cmd->add_option("--alpha-no", c.tol.alpha_no, "spread bound for 'not_equivalent'")
        ->check(CLI::Range(1e-300, 1.0));
}

int emit(const Common& c, const json& doc) {
    const std::string text = c.pretty ? doc.dump(2) + "\n" : doc.dump() + "\n";
    if (c.output.empty()) {
        std::cout << text;
        return 0;
    }
    if (!octa::write_file_atomic(c.output, text)) {
        std::cerr << "error: cannot write " << c.output << "\n";
        return 2;
    }
    return 0;
}

bool load_json(const std::string& path, json& doc) {
    const auto text = octa::read_file(path);
    if (!text) {
        std::cerr << "error: cannot read " << path << "\n";
        return false;
    }
    doc = json::parse(*text, nullptr, false);
    if (doc.is_discarded()) {
        std::cerr << "error: " << path << " is not valid JSON\n";
        return false;
    }
    return true;
}

bool load_development(const std::string& path, octa::NaturalDevelopment& dev) {
    json doc;
    if (!load_json(path, doc)) return false;
    const auto val = octa::development_from_json(doc);
    if (!val.ok) {
        for (const auto& v : val.violations) std::cerr << "error: " << path << ": " << v << "\n";
        return false;
    }
    dev = *val.development;
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"convex octahedron developments: validation, reconstruction, affine equivalence"};
    app.require_subcommand(1);

    Common c_validate, c_recon, c_decide, c_develop, c_generate, c_perturb;
    std::string path_a, path_b, geom_path, dev_path;

    auto* cmd_validate = app.add_subcommand("validate", "check an octa-dev/1 development file");
    cmd_validate->add_option("file", path_a, "octa-dev/1 JSON file")->required();
    add_common(cmd_validate, c_validate);

    auto* cmd_recon =
        app.add_subcommand("reconstruct", "recover diagonals and coordinates from a development");
    cmd_recon->add_option("file", path_b, "octa-dev/1 JSON file")->required();
    add_common(cmd_recon, c_recon);

    std::string decide_a, decide_b;
    bool search_labelings = false, exit_on_verdict = false;
    auto* cmd_decide =
        app.add_subcommand("decide", "decide affine equivalence of two developments");
    cmd_decide->add_option("file_a", decide_a, "first octa-dev/1 file")->required();
    cmd_decide->add_option("file_b", decide_b, "second octa-dev/1 file")->required();
    cmd_decide->add_flag("--search-labelings", search_labelings,
                         "try the 48 combinatorial relabelings of the second development");
    cmd_decide->add_flag("--exit-on-verdict", exit_on_verdict,
                         "exit 0 equivalent / 1 not_equivalent / 4 indeterminate");
    add_common(cmd_decide, c_decide);

    bool require_convex = false;
    auto* cmd_develop = app.add_subcommand("develop", "measure the development of a geometry file");
    cmd_develop->add_option("file", geom_path, "octa-geom/1 JSON file")->required();
    cmd_develop->add_flag("--require-convex", require_convex,
                          "fail unless the geometry is a convex octahedron");
    add_common(cmd_develop, c_develop);

    std::uint64_t seed = 0;
    double noise = 0.25;
    auto* cmd_generate = app.add_subcommand("generate", "sample a random convex octahedron");
    cmd_generate->add_option("--seed", seed, "generator seed")->capture_default_str();
    cmd_generate->add_option("--noise", noise, "vertex perturbation amplitude in [0,1)")
        ->check(CLI::Range(0.0, 0.999));
    add_common(cmd_generate, c_generate);

    std::string edge_key = "01";
    double factor = 1.0;
    auto* cmd_perturb = app.add_subcommand("perturb", "rescale one edge of a development");
    cmd_perturb->add_option("file", dev_path, "octa-dev/1 JSON file")->required();
    cmd_perturb->add_option("--edge", edge_key, "edge key, e.g. 01")->required();
    cmd_perturb->add_option("--factor", factor, "length multiplier")->required();
    add_common(cmd_perturb, c_perturb);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    for (const Common* c : {&c_validate, &c_recon, &c_decide, &c_develop, &c_generate, &c_perturb}) {
        if (!c->tol.valid()) {
            std::cerr << "error: tolerance overrides must lie in (0,1) with alpha-yes < alpha-no\n";
            return 2;
        }
    }

    try {
        if (cmd_validate->parsed()) {
            json doc;
            if (!load_json(path_a, doc)) return 2;
            const auto val = octa::development_from_json(doc);
            json out{{"valid", val.ok}, {"violations", val.violations}};
            emit(c_validate, out);
            return val.ok ? 0 : 2;
        }

        if (cmd_recon->parsed()) {
            octa::NaturalDevelopment dev;
            if (!load_development(path_b, dev)) return 2;
            const auto res = octa::reconstruct(dev, c_recon.tol);
            emit(c_recon, octa::reconstruction_to_json(res, c_recon.tol));
            return res.status == octa::ReconStatus::Unique ? 0 : 3;
        }

        if (cmd_decide->parsed()) {
            octa::NaturalDevelopment dev_a, dev_b;
            if (!load_development(decide_a, dev_a) || !load_development(decide_b, dev_b)) return 2;

            octa::Decision dec = octa::decide(dev_a, dev_b, c_decide.tol);
            json out;
            if (search_labelings && dec.verdict != octa::Verdict::Equivalent) {
                const auto cands = octa::align_labelings(dev_a, dev_b, c_decide.tol);
                json tried = json::array();
                for (const auto& cand : cands) {
                    const octa::Decision alt =
                        octa::decide(dev_a, dev_b.relabeled(cand.perm), c_decide.tol);
                    tried.push_back(json{{"perm", cand.perm},
                                         {"spread", cand.spread},
                                         {"verdict", octa::to_string(alt.verdict)}});
                    if (alt.verdict == octa::Verdict::Equivalent) {
                        dec = alt;
                        break;
                    }
                }
                out = octa::decision_to_json(dec, c_decide.tol);
                out["details"]["searched_labelings"] = tried;
            } else {
                out = octa::decision_to_json(dec, c_decide.tol);
            }
            emit(c_decide, out);

            const bool recon_failed =
                dec.recon_a.status != octa::ReconStatus::Unique ||
                dec.recon_b.status != octa::ReconStatus::Unique;
            if (exit_on_verdict) {
                switch (dec.verdict) {
                    case octa::Verdict::Equivalent: return 0;
                    case octa::Verdict::NotEquivalent: return 1;
                    case octa::Verdict::Indeterminate: return 4;
                }
            }
            return recon_failed ? 3 : 0;
        }

        if (cmd_develop->parsed()) {
            json doc;
            if (!load_json(geom_path, doc)) return 2;
            const auto parsed = octa::geometry_from_json(doc);
            if (!parsed.ok) {
                for (const auto& e : parsed.errors)
                    std::cerr << "error: " << geom_path << ": " << e << "\n";
                return 2;
            }
            const auto issues = octa::validate_octahedron(parsed.octahedron, c_develop.tol);
            if (!issues.empty()) {
                for (const auto& e : issues) std::cerr << "error: " << geom_path << ": " << e << "\n";
                return 2;
            }
            if (require_convex &&
                octa::is_convex(parsed.octahedron, c_develop.tol).verdict !=
                    octa::Convexity::Convex) {
                std::cerr << "error: " << geom_path << ": geometry is not a convex octahedron\n";
                return 2;
            }
            emit(c_develop, octa::development_to_json(octa::develop(parsed.octahedron)));
            return 0;
        }

        if (cmd_generate->parsed()) {
            octa::GenConfig cfg;
            cfg.seed = seed;
            cfg.noise = noise;
            const auto oct = octa::random_convex_octahedron(cfg);
            emit(c_generate, octa::geometry_to_json(oct));
            return 0;
        }

        if (cmd_perturb->parsed()) {
            octa::NaturalDevelopment dev;
            if (!load_development(dev_path, dev)) return 2;
            int edge_idx = -1;
            if (edge_key.size() == 2 && std::isdigit(edge_key[0]) && std::isdigit(edge_key[1]))
                edge_idx = octa::combinatorics::edge_index(edge_key[0] - '0', edge_key[1] - '0');
            if (edge_idx < 0) {
                std::cerr << "error: \"" << edge_key << "\" is not a canonical edge key\n";
                return 2;
            }
            const auto out = octa::perturb_development(dev, edge_idx, factor);
            emit(c_perturb, octa::development_to_json(out));
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
