// fairalloc: command-line front end. Every invocation prints exactly one JSON
// document on stdout. Exit codes: 0 satisfied / exists / success, 1 not
// satisfied / does not exist, 2 usage, input or guard error (with a JSON error
// object on stderr).

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fairinit/fairinit.hpp"

using namespace fairinit;

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out)
    throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

int fail(const char* kind, const std::string& message) {
  Json err = {{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << err.dump() << "\n";
  return 2;
}

Notion make_notion(const std::string& name, const std::string& alpha) {
  const auto tag = parse_notion(name);
  if (alpha.empty())
    return tag;
  if (tag != NotionTag::MmsInit)
    throw Usage("--alpha only applies to mms-init");
  return Notion(tag, parse_ratio(alpha));
}

Json maybe_allocation(const std::optional<Allocation>& a) { return a ? to_json(*a) : Json(nullptr); }

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair allocation with initial utilities"};
  app.require_subcommand(1);
  const Guard guard = Guard::from_env();

  std::string instance_path, allocation_path, graph_path, notion_name_arg = "ef1-init", alpha_arg, method = "oracle",
                                                              algorithm = "round-robin", trace_path, out_path,
                                                              preset_name, flavor_arg = "general";
  std::size_t colors = 0;
  bool lenient = false;
  RandomSpec spec;

  auto* validate = app.add_subcommand("validate", "Check the structural assumptions on an instance");
  validate->add_option("--instance", instance_path)->required();
  validate->add_flag("--lenient", lenient, "Report issues as warnings and exit 0");

  auto* check = app.add_subcommand("check", "Check an allocation against a fairness notion");
  check->add_option("--instance", instance_path)->required();
  check->add_option("--allocation", allocation_path)->required();
  check->add_option("--notion", notion_name_arg);
  check->add_option("--alpha", alpha_arg, "p/q, mms-init only");

  auto* exists = app.add_subcommand("exists", "Decide whether a complete allocation satisfies a notion");
  exists->add_option("--instance", instance_path)->required();
  exists->add_option("--notion", notion_name_arg);
  exists->add_option("--alpha", alpha_arg);
  exists->add_option("--method", method)->check(CLI::IsMember({"oracle", "dp-few", "dp-identical", "profiles"}));

  auto* solve = app.add_subcommand("solve", "Compute an allocation");
  solve->add_option("--instance", instance_path)->required();
  solve->add_option("--algorithm", algorithm)->check(CLI::IsMember({"round-robin"}));
  solve->add_option("--trace", trace_path, "Write the pick trace here");

  auto* mms = app.add_subcommand("mms", "Max-min shares, optionally checking an allocation");
  mms->add_option("--instance", instance_path)->required();
  mms->add_option("--allocation", allocation_path);
  mms->add_option("--alpha", alpha_arg);

  auto* reduce = app.add_subcommand("reduce", "Build the EF1-init instance for an equitable coloring question");
  reduce->add_option("--graph", graph_path)->required();
  reduce->add_option("--colors", colors)->required();
  reduce->add_option("--out", out_path);

  auto* pad = app.add_subcommand("pad", "Add isolated vertices so colorability becomes equitable colorability");
  pad->add_option("--graph", graph_path)->required();
  pad->add_option("--colors", colors)->required();
  pad->add_option("--out", out_path);

  auto* certify = app.add_subcommand("certify", "Check the coloring reduction exhaustively on one graph");
  certify->add_option("--graph", graph_path)->required();
  certify->add_option("--colors", colors)->required();

  auto* gen = app.add_subcommand("gen", "Generate instances");
  gen->add_option("--preset", preset_name)->check(CLI::IsMember({"obs1", "ex1", "ex2"}));
  gen->add_option("--out", out_path);
  auto* gen_harmonic = gen->add_subcommand("mms-harmonic", "Instance with no alpha-MMS-init allocation");
  gen_harmonic->add_option("--alpha", alpha_arg)->required();
  auto* gen_random = gen->add_subcommand("random", "Seeded random instance");
  gen_random->add_option("--seed", spec.seed)->required();
  gen_random->add_option("--n", spec.agents)->required();
  gen_random->add_option("--m", spec.resources)->required();
  gen_random->add_option("--max-u", spec.max_u)->required();
  gen_random->add_option("--max-b", spec.max_b)->required();
  gen_random->add_option("--flavor", flavor_arg)->check(CLI::IsMember({"general", "identical", "diminishing"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what());
  }

  try {
    if (*validate) {
      const auto result = validate_instance(instance_from_json(read_json_file(instance_path)));
      Json out = to_json(result);
      out["mode"] = lenient ? "lenient" : "strict";
      emit(out);
      return result.ok() || lenient ? 0 : 1;
    }

    if (*check) {
      const auto inst = instance_from_json(read_json_file(instance_path));
      const auto alloc = allocation_from_json(read_json_file(allocation_path));
      const auto report = check_allocation(inst, alloc, make_notion(notion_name_arg, alpha_arg), guard);
      emit(to_json(report));
      return report.satisfied ? 0 : 1;
    }

    if (*exists) {
      const auto inst = instance_from_json(read_json_file(instance_path));
      const auto notion = make_notion(notion_name_arg, alpha_arg);
      Json out = {{"notion", notion_name(notion.tag)}, {"method", method}};
      std::optional<Allocation> found;
      if (method == "oracle") {
        found = exists_complete(inst, notion, guard);
      } else if (method == "profiles") {
        found = exists_complete_by_profiles(inst, notion, guard);
      } else if (method == "dp-few") {
        if (notion.tag != NotionTag::EfInit && notion.tag != NotionTag::Ef1Init)
          throw Usage("dp-few decides ef-init and ef1-init only");
        auto r = notion.tag == NotionTag::EfInit ? dp_exists_ef_init(inst) : dp_exists_ef1_init(inst);
        found = std::move(r.allocation);
        out["stats"] = {{"states_visited", r.stats.states_visited}, {"layer_sizes", r.stats.layer_sizes}};
      } else {
        if (notion.tag != NotionTag::EfInit)
          throw Usage("dp-identical decides ef-init only");
        auto r = decide_ef_init_identical(inst);
        found = std::move(r.allocation);
        out["analysis"] = to_json(r.analysis);
        out["entries"] = r.entries;
      }
      out["exists"] = found.has_value();
      out["allocation"] = maybe_allocation(found);
      emit(out);
      return found ? 0 : 1;
    }

    if (*solve) {
      const auto inst = instance_from_json(read_json_file(instance_path));
      const auto result = run_round_robin(inst);
      if (!trace_path.empty())
        write_file(trace_path, to_json(result.trace));
      emit({{"algorithm", algorithm}, {"allocation", to_json(result.allocation)}});
      return 0;
    }

    if (*mms) {
      const auto inst = instance_from_json(read_json_file(instance_path));
      const Ratio alpha = alpha_arg.empty() ? Ratio(1) : parse_ratio(alpha_arg);
      Notion::require_alpha(alpha);
      if (!allocation_path.empty()) {
        const auto report = check_mms_init(inst, allocation_from_json(read_json_file(allocation_path)), alpha, guard);
        emit(to_json(report));
        return report.satisfied ? 0 : 1;
      }
      Json out = {{"alpha", alpha.str()}};
      if (is_identical_resources(inst)) {
        const auto cert = mms_count_certificate(inst, alpha);
        out["shares"] = cert.shares;
        out["certificate"] = to_json(cert);
        emit(out);
        return cert.impossible ? 1 : 0;
      }
      Json shares = Json::array();
      for (Agent i = 0; i < inst.agents(); ++i)
        shares.push_back(compute_mms(inst, i, guard));
      out["shares"] = std::move(shares);
      out["certificate"] = nullptr;
      emit(out);
      return 0;
    }

    if (*reduce || *pad) {
      const auto g = graph_from_json(read_json_file(graph_path));
      const Json doc = *reduce ? to_json(build_ef1_instance(g, colors)) : to_json(pad_to_equitable(g, colors));
      if (out_path.empty()) {
        emit(doc);
      } else {
        write_file(out_path, doc);
        emit({{"written", out_path}});
      }
      return 0;
    }

    if (*certify) {
      const auto g = graph_from_json(read_json_file(graph_path));
      const auto c = certify_reduction(g, colors, guard);
      emit({{"colors", colors},
            {"coloring_exists", c.coloring_exists},
            {"allocation_exists", c.allocation_exists},
            {"forward_ok", c.forward_ok},
            {"backward_ok", c.backward_ok},
            {"certified", c.certified}});
      return c.certified ? 0 : 1;
    }

    if (*gen) {
      std::optional<Instance> inst;
      if (*gen_harmonic) {
        inst = mms_harmonic_instance(parse_ratio(alpha_arg));
      } else if (*gen_random) {
        spec.flavor = parse_flavor(flavor_arg);
        inst = random_instance(spec);
      } else if (!preset_name.empty()) {
        inst = preset(preset_name);
      } else {
        throw Usage("gen needs --preset, mms-harmonic or random");
      }
      if (out_path.empty()) {
        emit(to_json(*inst));
      } else {
        write_file(out_path, to_json(*inst));
        emit({{"written", out_path}});
      }
      return 0;
    }
  } catch (const Usage& e) {
    return fail("usage", e.what());
  } catch (const InputError& e) {
    return fail("input", e.what());
  } catch (const GuardExceeded& e) {
    return fail("guard", e.what());
  } catch (const PreconditionViolated& e) {
    return fail("precondition", e.what());
  }
  return fail("usage", "no subcommand");
}
