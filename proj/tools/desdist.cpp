/*
 * Copyright 2026 The desdist Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <desdist/desdist.hpp>

namespace fs = std::filesystem;
using namespace desdist;

namespace {

enum Exit : int { kOk = 0, kFalse = 1, kUsage = 2, kInput = 3, kHypothesis = 4 };

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

ProjectionSpec observation(const std::string& list) {
    ProjectionSpec p;
    for (auto& l : split_list(list))
        p.observable.insert(l);
    return p;
}

void save(const Generator& g, const fs::path& path) {
    write_file_atomic(path, serialize_automaton(g));
    auto c = canonical(g);
    std::cout << c.name() << ": " << c.state_count() << " states, " << c.transition_count() << " transitions -> "
              << path.string() << '\n';
}

int verdict(const std::string& property, bool value) {
    std::cout << property << ": " << (value ? "true" : "false") << '\n';
    return value ? kOk : kFalse;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw Error(ErrorKind::IoError, "cannot create '" + dir.string() + "': " + ec.message());
}

std::string join(const std::vector<std::string>& items, const char* sep = " ") {
    std::string out;
    for (const auto& s : items)
        out += (out.empty() ? "" : sep) + s;
    return out;
}

/// Per-state disablement table of SUP against G, plus per-event counts.
std::string disablement_report(const Generator& sup, const Generator& g) {
    auto disabled = disabled_events(sup, g);
    std::ostringstream out;
    std::vector<std::size_t> count(sup.event_count(), 0);
    out << "disablements\n";
    for (StateId x = 0; x < sup.state_count(); ++x) {
        std::vector<std::string> labels;
        for (EventId e : disabled[x])
            if (sup.alphabet().controllable(e)) {
                labels.push_back(sup.alphabet()[e].label);
                ++count[e];
            }
        if (!labels.empty())
            out << "state " << x << ": " << join(labels) << '\n';
    }
    out << "counts\n";
    for (EventId e = 0; e < sup.event_count(); ++e)
        if (sup.alphabet().controllable(e))
            out << "event " << sup.alphabet()[e].label << " disabled_at " << count[e] << '\n';
    return out.str();
}

std::vector<Generator> load_all(const std::vector<std::string>& paths) {
    std::vector<Generator> out;
    for (const auto& p : paths)
        out.push_back(load_automaton(p));
    return out;
}

/// Writes loc_<k>.aut / loc_<k>.reduced.aut for every block.
void write_locals(const fs::path& dir, const std::vector<Generator>& locals, const std::vector<Generator>& reduced) {
    for (std::size_t i = 0; i < locals.size(); ++i) {
        save(locals[i], dir / ("loc_" + std::to_string(i + 1) + ".aut"));
        save(reduced[i], dir / ("loc_" + std::to_string(i + 1) + ".reduced.aut"));
    }
}

struct FamilyArgs {
    std::string partition;
    std::string observable;
    bool has_observable = false;
    std::vector<std::string> observe;
};

ProjectionFamily family_from(const FamilyArgs& args, const Alphabet& sigma) {
    if (!args.observe.empty()) {
        ProjectionFamily fam;
        for (const auto& o : args.observe) {
            fam.specs.push_back(observation(o));
            fam.specs.back().validate(sigma);
        }
        return fam;
    }
    if (args.partition.empty())
        throw Error(ErrorKind::SemanticError, "a projection family needs --partition or --observe");
    std::optional<ProjectionSpec> observed;
    if (args.has_observable) {
        observed = observation(args.observable);
        observed->validate(sigma);
    }
    return family_for_partition(sigma, load_partition(args.partition), observed);
}

void add_family_options(CLI::App* cmd, FamilyArgs& args) {
    cmd->add_option("--partition", args.partition, "control partition file");
    cmd->add_option("--observable", args.observable, "comma-separated observable events (with --partition)");
    cmd->add_option("--observe", args.observe, "one channel per occurrence: comma-separated events");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"desdist: supervisor synthesis, localization and decomposition"};
    app.require_subcommand(1);
    std::function<int()> action;

    // transformations ------------------------------------------------------
    std::string out, a_path, b_path, list, partition_path, dir, ambient_path, within_path;
    std::vector<std::string> inputs;
    std::size_t block = 0;
    bool generalized = false;
    FamilyArgs fam;

    auto fold = [&](const char* name, const char* help, auto op) {
        auto* cmd = app.add_subcommand(name, help);
        cmd->add_option("OUT", out, "output automaton")->required();
        cmd->add_option("INPUTS", inputs, "input automata")->required()->expected(2, -1);
        cmd->callback([&, op] {
            action = [&, op] {
                auto gs = load_all(inputs);
                Generator r = gs[0];
                for (std::size_t i = 1; i < gs.size(); ++i)
                    r = op(r, gs[i]);
                save(r, out);
                return kOk;
            };
        });
    };
    fold("compose", "synchronous product of two or more automata",
         [](const Generator& x, const Generator& y) { return sync_product(x, y); });
    fold("meet", "language intersection over a shared alphabet",
         [](const Generator& x, const Generator& y) { return meet(x, y); });

    auto* trim_cmd = app.add_subcommand("trim", "reachable and coreachable part");
    trim_cmd->add_option("A", a_path)->required();
    trim_cmd->add_option("-o", out)->required();
    trim_cmd->callback([&] { action = [&] { save(trim(load_automaton(a_path)), out); return kOk; }; });

    auto* supcon_cmd = app.add_subcommand("supcon", "supremal controllable sublanguage");
    supcon_cmd->add_option("PLANT", a_path)->required();
    supcon_cmd->add_option("SPEC", b_path)->required();
    supcon_cmd->add_option("-o", out)->required();
    supcon_cmd->callback([&] {
        action = [&] {
            auto res = supremal_controllable(load_automaton(b_path), load_automaton(a_path));
            for (const auto& w : res.warnings)
                std::cerr << "warning: " << w << '\n';
            save(res.supervisor, out);
            return kOk;
        };
    });

    auto* project_cmd = app.add_subcommand("project", "natural projection");
    project_cmd->add_option("A", a_path)->required();
    project_cmd->add_option("--keep", list, "comma-separated observable events")->required();
    project_cmd->add_option("-o", out)->required();
    project_cmd->callback([&] {
        action = [&] {
            auto a = load_automaton(a_path);
            auto p = observation(list);
            p.validate(a.alphabet());
            save(project(a, p), out);
            return kOk;
        };
    });

    auto* lift_cmd = app.add_subcommand("lift", "self-loop new events at every state");
    lift_cmd->add_option("A", a_path)->required();
    lift_cmd->add_option("--add", list, "comma-separated label:c|u")->required();
    lift_cmd->add_option("-o", out)->required();
    lift_cmd->callback([&] {
        action = [&] {
            std::vector<EventDecl> events;
            for (const auto& item : split_list(list)) {
                auto colon = item.find(':');
                std::string kind = colon == std::string::npos ? "" : item.substr(colon + 1);
                if (kind != "c" && kind != "u")
                    throw Error(ErrorKind::SyntaxError, "expected LABEL:c or LABEL:u, got '" + item + "'");
                events.push_back({item.substr(0, colon), kind == "c"});
            }
            save(selfloop(load_automaton(a_path), events), out);
            return kOk;
        };
    });

    auto* feasible_cmd = app.add_subcommand("feasible", "feasible supervisor under partial observation");
    feasible_cmd->add_option("SUP", a_path)->required();
    feasible_cmd->add_option("PLANT", b_path)->required();
    feasible_cmd->add_option("--observable", list)->required();
    feasible_cmd->add_option("-o", out)->required();
    feasible_cmd->callback([&] {
        action = [&] {
            auto res = build_feasible_supervisor(load_automaton(a_path), load_automaton(b_path), observation(list));
            if (!res.closed_loop_nonblocking)
                std::cerr << "warning: closed loop with the feasible supervisor is blocking\n";
            save(res.supervisor, out);
            return kOk;
        };
    });

    auto* reduce_cmd = app.add_subcommand("reduce", "supervisor reduction by control congruence");
    reduce_cmd->add_option("SUP", a_path)->required();
    reduce_cmd->add_option("PLANT", b_path)->required();
    auto* reduce_part = reduce_cmd->add_option("--partition", partition_path);
    reduce_cmd->add_option("--block", block, "1-based block index")->needs(reduce_part);
    reduce_cmd->add_option("-o", out)->required();
    reduce_cmd->callback([&] {
        action = [&] {
            std::optional<ControlPartition> part;
            std::optional<std::size_t> k;
            if (!partition_path.empty())
                part = load_partition(partition_path);
            if (reduce_cmd->count("--block")) {
                if (block == 0)
                    throw Error(ErrorKind::BadBlockIndex, "blocks are numbered from 1");
                k = block - 1;
            }
            save(reduce_supervisor(load_automaton(a_path), load_automaton(b_path), part, k), out);
            return kOk;
        };
    });

    auto* localize_cmd = app.add_subcommand("localize", "one local controller per partition block");
    localize_cmd->add_option("SUP", a_path)->required();
    localize_cmd->add_option("PLANT", b_path)->required();
    localize_cmd->add_option("--partition", partition_path)->required();
    localize_cmd->add_option("-o", dir)->required();
    localize_cmd->callback([&] {
        action = [&] {
            auto sup = load_automaton(a_path);
            auto g = load_automaton(b_path);
            auto part = load_partition(partition_path);
            auto set = localize(sup, g, part);
            ensure_dir(dir);
            write_locals(dir, set.locals, set.reduced);
            std::ostringstream rep;
            rep << "supervisor " << sup.name() << " states " << sup.state_count() << '\n';
            rep << "partition " << part.name() << " blocks " << part.size() << '\n';
            rep << disablement_report(sup, g);
            rep << "locals\n";
            for (std::size_t i = 0; i < part.size(); ++i)
                rep << "block " << i + 1 << " events " << join(part.block(i)) << " local_states "
                    << set.locals[i].state_count() << " reduced_states " << set.reduced[i].state_count() << '\n';
            rep << "control_equivalent " << (is_control_equivalent(g, sup, set.reduced) ? "true" : "false") << '\n';
            write_file_atomic(fs::path(dir) / "report.txt", rep.str());
            return kOk;
        };
    });

    std::string observable_list;
    auto* distribute_cmd = app.add_subcommand("distribute", "coparanormality-based local controllers");
    distribute_cmd->add_option("SUP", a_path)->required();
    distribute_cmd->add_option("PLANT", b_path)->required();
    distribute_cmd->add_option("--partition", partition_path)->required();
    distribute_cmd->add_option("--observable", observable_list, "comma-separated observable events");
    distribute_cmd->add_option("-o", dir)->required();
    distribute_cmd->callback([&] {
        action = [&] {
            auto sup = load_automaton(a_path);
            auto g = load_automaton(b_path);
            auto part = load_partition(partition_path);
            std::optional<ProjectionSpec> observed;
            if (distribute_cmd->count("--observable")) {
                observed = observation(observable_list);
                observed->validate(sup.alphabet());
            }
            auto family = family_for_partition(sup.alphabet(), part, observed);
            std::vector<Generator> locals, reduced;
            if (observed) {
                auto supf = build_feasible_supervisor(sup, g, *observed).supervisor;
                for (std::size_t i = 0; i < part.size(); ++i) {
                    auto lifted = inverse_project(project(build_feasible_local(supf, g, part, i), family.specs[i]),
                                                  sup.alphabet());
                    lifted.set_name("DIST" + std::to_string(i + 1));
                    locals.push_back(std::move(lifted));
                }
            } else {
                for (std::size_t i = 0; i < part.size(); ++i)
                    locals.push_back(build_selflooped(sup, g, part, i));
            }
            for (std::size_t i = 0; i < part.size(); ++i) {
                auto r = reduce_supervisor(locals[i], g, part, i);
                r.set_name("LOC" + std::to_string(i + 1));
                reduced.push_back(std::move(r));
            }
            ensure_dir(dir);
            write_locals(dir, locals, reduced);
            std::ostringstream rep;
            rep << "supervisor " << sup.name() << " states " << sup.state_count() << '\n';
            rep << "partition " << part.name() << " blocks " << part.size() << '\n';
            for (std::size_t i = 0; i < part.size(); ++i) {
                std::vector<std::string> channel(family.specs[i].observable.begin(), family.specs[i].observable.end());
                rep << "channel " << i + 1 << ": " << join(channel) << '\n';
            }
            rep << disablement_report(sup, g);
            rep << "coparanormal " << (is_coparanormal(meet(sup, g), g, family, locals) ? "true" : "false") << '\n';
            rep << "control_equivalent " << (is_control_equivalent(g, sup, locals) ? "true" : "false") << '\n';
            write_file_atomic(fs::path(dir) / "report.txt", rep.str());
            return kOk;
        };
    });

    auto* decompose_cmd = app.add_subcommand("decompose", "decomposition of a relatively observable supervisor");
    decompose_cmd->add_option("SUP", a_path)->required();
    decompose_cmd->add_option("PLANT", b_path)->required();
    decompose_cmd->add_option("--partition", partition_path)->required();
    decompose_cmd->add_option("--observable", observable_list)->required();
    decompose_cmd->add_option("--ambient", ambient_path, "ambient language C (defaults to SUP)");
    decompose_cmd->add_flag("--generalized", generalized, "one channel per block, any block count");
    decompose_cmd->add_option("-o", dir)->required();
    decompose_cmd->callback([&] {
        action = [&] {
            auto sup = load_automaton(a_path);
            auto g = load_automaton(b_path);
            auto part = load_partition(partition_path);
            DecompositionOptions opts;
            opts.generalized = generalized;
            if (!ambient_path.empty())
                opts.ambient = load_automaton(ambient_path);
            auto d = decompose_by_theorem1(sup, g, observation(observable_list), part, opts);
            std::vector<Generator> reduced;
            for (std::size_t i = 0; i < part.size(); ++i) {
                auto r = reduce_supervisor(d.locals[i], g, part, i);
                r.set_name("LOC" + std::to_string(i + 1));
                reduced.push_back(std::move(r));
            }
            ensure_dir(dir);
            write_locals(dir, d.locals, reduced);
            std::ostringstream rep;
            rep << "supervisor " << sup.name() << " states " << sup.state_count() << '\n';
            rep << "witnesses " << join(d.witnesses) << '\n';
            for (std::size_t i = 0; i < d.family.size(); ++i) {
                std::vector<std::string> channel(d.family.specs[i].observable.begin(),
                                                 d.family.specs[i].observable.end());
                rep << "channel " << i + 1 << ": " << join(channel) << '\n';
            }
            rep << "decomposable " << (d.decomposable ? "true" : "false") << '\n';
            write_file_atomic(fs::path(dir) / "report.txt", rep.str());
            std::cout << "decomposable: " << (d.decomposable ? "true" : "false") << '\n';
            return d.decomposable ? kOk : kFalse;
        };
    });

    auto* dot_cmd = app.add_subcommand("dot", "Graphviz rendering");
    dot_cmd->add_option("A", a_path)->required();
    dot_cmd->add_option("-o", out);
    dot_cmd->callback([&] {
        action = [&] {
            auto text = to_dot(load_automaton(a_path));
            if (out.empty())
                std::cout << text;
            else
                write_file_atomic(out, text);
            return kOk;
        };
    });

    auto* gen_cmd = app.add_subcommand("gen", "bundled models");
    gen_cmd->require_subcommand(1);
    auto* guideway_cmd = gen_cmd->add_subcommand("guideway", "two vehicles on a four-section guideway");
    guideway_cmd->add_option("-o", dir)->required();
    guideway_cmd->callback([&] {
        action = [&] {
            auto m = gen_guideway();
            ensure_dir(dir);
            save(m.v1, fs::path(dir) / "V1.aut");
            save(m.v2, fs::path(dir) / "V2.aut");
            save(m.plant, fs::path(dir) / "plant.aut");
            save(m.spec, fs::path(dir) / "spec.aut");
            for (const auto& [name, p] : m.partitions)
                write_file_atomic(fs::path(dir) / (name + ".part"), serialize_partition(p));
            return kOk;
        };
    });

    // checks ---------------------------------------------------------------
    auto* check = app.add_subcommand("check", "decide a property (exit 0 = true, 1 = false)");
    check->require_subcommand(1);

    auto* c_nb = check->add_subcommand("nonblocking", "every reachable state is coreachable");
    c_nb->add_option("A", a_path)->required();
    c_nb->callback([&] { action = [&] { return verdict("nonblocking", is_nonblocking(load_automaton(a_path))); }; });

    auto* c_ctrl = check->add_subcommand("controllable", "L(K) closed under plant-possible uncontrollable events");
    c_ctrl->add_option("K", a_path)->required();
    c_ctrl->add_option("PLANT", b_path)->required();
    c_ctrl->callback([&] {
        action = [&] { return verdict("controllable", is_controllable(load_automaton(a_path), load_automaton(b_path))); };
    });

    auto observed_check = [&](const char* name, const char* help, auto pred) {
        auto* cmd = check->add_subcommand(name, help);
        cmd->add_option("K", a_path)->required();
        cmd->add_option("PLANT", b_path)->required();
        cmd->add_option("--observable", list)->required();
        cmd->callback([&, name, pred] {
            action = [&, name, pred] {
                auto k = load_automaton(a_path);
                auto g = load_automaton(b_path);
                auto p = observation(list);
                p.validate(g.alphabet());
                return verdict(name, pred(k, g, p));
            };
        });
        return cmd;
    };
    observed_check("normal", "normality", [](auto& k, auto& g, auto& p) { return is_normal(k, g, p); });
    observed_check("paranormal", "paranormality", [](auto& k, auto& g, auto& p) { return is_paranormal(k, g, p); });
    auto* c_relobs = check->add_subcommand("relobs", "relative observability (ambient defaults to K)");
    c_relobs->add_option("K", a_path)->required();
    c_relobs->add_option("PLANT", b_path)->required();
    c_relobs->add_option("--observable", list)->required();
    c_relobs->add_option("--ambient", ambient_path);
    c_relobs->callback([&] {
        action = [&] {
            auto k = load_automaton(a_path);
            auto g = load_automaton(b_path);
            auto c = ambient_path.empty() ? k : load_automaton(ambient_path);
            return verdict("relobs", is_relative_observable(k, c, g, observation(list)));
        };
    });

    auto* c_copara = check->add_subcommand("coparanormal", "coparanormality witnessed by local languages");
    c_copara->add_option("K", a_path)->required();
    c_copara->add_option("PLANT", b_path)->required();
    c_copara->add_option("--locals", inputs, "one local per channel")->required();
    add_family_options(c_copara, fam);
    c_copara->callback([&] {
        action = [&] {
            fam.has_observable = c_copara->count("--observable") > 0;
            auto k = load_automaton(a_path);
            auto g = load_automaton(b_path);
            return verdict("coparanormal", is_coparanormal(k, g, family_from(fam, g.alphabet()), load_all(inputs)));
        };
    });

    auto family_check = [&](const char* name, const char* help, auto pred) {
        auto* cmd = check->add_subcommand(name, help);
        cmd->add_option("K", a_path)->required();
        cmd->add_option("PLANT", b_path)->required();
        add_family_options(cmd, fam);
        cmd->callback([&, cmd, name, pred] {
            action = [&, cmd, name, pred] {
                fam.has_observable = cmd->count("--observable") > 0;
                auto k = load_automaton(a_path);
                auto g = load_automaton(b_path);
                return verdict(name, pred(k, g, family_from(fam, g.alphabet())));
            };
        });
    };
    family_check("decomposable", "decomposability w.r.t. a projection family",
                 [](auto& k, auto& g, const ProjectionFamily& f) { return is_decomposable(k, g, f); });
    family_check("conormal", "conormality (strong decomposability)",
                 [](auto& k, auto& g, const ProjectionFamily& f) { return is_conormal(k, g, f); });

    auto* c_equiv = check->add_subcommand("equiv", "controllers met with the plant reproduce SUP");
    c_equiv->add_option("PLANT", a_path)->required();
    c_equiv->add_option("SUP", b_path)->required();
    c_equiv->add_option("CONTROLLERS", inputs)->required()->expected(1, -1);
    c_equiv->callback([&] {
        action = [&] {
            return verdict("control_equivalent",
                           is_control_equivalent(load_automaton(a_path), load_automaton(b_path), load_all(inputs)));
        };
    });

    auto* c_local = check->add_subcommand("local", "a controller disables only events of its block");
    c_local->add_option("LOC", a_path)->required();
    c_local->add_option("PLANT", b_path)->required();
    c_local->add_option("--block", list, "comma-separated block events")->required();
    c_local->add_option("--within", within_path, "restrict to the closed loop of this supervisor");
    c_local->callback([&] {
        action = [&] {
            std::optional<Generator> within;
            if (!within_path.empty())
                within = load_automaton(within_path);
            return verdict("local",
                           is_local_controller(load_automaton(a_path), load_automaton(b_path), split_list(list), within));
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    try {
        return action ? action() : kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::HypothesisUnmet ? kHypothesis : kInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    }
}
