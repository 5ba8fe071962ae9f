#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rackx/corpus.hpp"
#include "rackx/functors.hpp"
#include "rackx/io.hpp"
#include "rackx/pullback.hpp"

/// Command implementations behind the `rackx` executable. Each returns the
/// process exit code: 0 pass, 1 axiom or certification failure, 2 bad input.
namespace rackx::cli {

using io::Json;

inline constexpr int kPass = 0;
inline constexpr int kFail = 1;
inline constexpr int kBadInput = 2;

struct Options {
  std::optional<std::string> report_path;
  bool timing = false;
};

/// Named inputs (--group, --xmod, ...) and positional ones.
struct Inputs {
  std::map<std::string, std::string> named;
  std::vector<std::string> positional;

  const std::string& require(const std::string& key) const {
    auto it = named.find(key);
    if (it == named.end() || it->second.empty())
      throw io::ParseError("missing required input --" + key);
    return it->second;
  }
  bool has(const std::string& key) const {
    auto it = named.find(key);
    return it != named.end() && !it->second.empty();
  }
};

namespace detail {

inline Json violation_json(const Violation& v) {
  Json j;
  j["axiom"] = v.axiom;
  j["witness"] = v.witness;
  j["detail"] = v.detail;
  return j;
}

inline Json report(const std::string& command) {
  Json j;
  j["format-version"] = io::kFormatVersion;
  j["kind"] = "report";
  j["command"] = command;
  return j;
}

inline void digests(Json& j, const Inputs& in) {
  Json d = Json::object();
  for (const auto& [key, path] : in.named) d[key] = io::digest(io::read_file(path));
  for (std::size_t i = 0; i < in.positional.size(); ++i)
    d["arg" + std::to_string(i)] = io::digest(io::read_file(in.positional[i]));
  j["input-digests"] = d;
}

template <typename T>
T load_as(const std::string& path, const std::string& role) {
  return io::Reader::as<T>(io::load(path), "--" + role);
}

/// Runs body, mapping library exceptions to exit codes and emitting the report.
template <typename Body>
int guarded(const std::string& command, std::ostream& out, std::ostream& err,
            const Options& opt, Body&& body) {
  const auto start = std::chrono::steady_clock::now();
  Json j = report(command);
  int code = kPass;
  try {
    code = body(j);
  } catch (const io::ParseError& e) {
    err << "rackx: " << e.what() << "\n";
    return kBadInput;
  } catch (const AxiomViolation& e) {
    j["verdict"] = "fail";
    j["violation"] = violation_json(e.violation());
    code = kFail;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "rackx: " << e.what() << "\n";
    return kBadInput;
  }
  if (!j.contains("verdict")) j["verdict"] = code == kPass ? "pass" : "fail";
  if (opt.timing)
    j["timing-ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  const auto text = io::to_text(j);
  out << text;
  if (opt.report_path) {
    std::ofstream f(*opt.report_path, std::ios::binary);
    f << text;
  }
  return code;
}

}  // namespace detail

/// Loads and fully validates a structure file of any kind.
inline int check(const std::string& path, std::ostream& out, std::ostream& err,
                 const Options& opt = {}) {
  return detail::guarded("check", out, err, opt, [&](Json& j) {
    j["input"] = path;
    j["input-digests"] = Json{{"input", io::digest(io::read_file(path))}};
    const auto s = io::load(path);
    j["input-kind"] = io::kind_of(s);
    return kPass;
  });
}

/// Builds a structure and writes it (re-validated through a parse of the
/// emitted text) to out_path, or to `out` when no path is given.
inline int construct(const std::string& kind, const Inputs& in,
                     const std::optional<std::string>& out_path, std::ostream& out,
                     std::ostream& err) {
  try {
    io::Structure result = [&]() -> io::Structure {
      if (kind == "conj") return conj_rack(detail::load_as<FiniteGroup>(in.require("group"), "group"));
      if (kind == "core") return core_rack(detail::load_as<FiniteGroup>(in.require("group"), "group"));
      if (kind == "point")
        return adjoin_basepoint(detail::load_as<UnpointedRack>(in.require("rack"), "rack"));
      if (kind == "product") {
        if (in.positional.size() != 2) throw io::ParseError("product takes two rack files");
        return product_rack(detail::load_as<FiniteRack>(in.positional[0], "arg0"),
                            detail::load_as<FiniteRack>(in.positional[1], "arg1"));
      }
      if (kind == "hemisemi")
        return hemi_semidirect(detail::load_as<RackAction>(in.require("action"), "action"));
      if (kind == "fiber") {
        auto left = io::load(in.require("left"));
        auto right = io::load(in.require("right"));
        if (std::holds_alternative<RackXMod>(left))
          return fiber_product_xmod(std::get<RackXMod>(left),
                                    io::Reader::as<RackXMod>(std::move(right), "--right"));
        return fiber_product(io::Reader::as<RackHom>(std::move(left), "--left"),
                             io::Reader::as<RackHom>(std::move(right), "--right"))
            .carrier;
      }
      if (kind == "pullback") {
        if (in.has("request")) {
          auto req = detail::load_as<io::PullbackRequest>(in.require("request"), "request");
          return pullback_xmod(req.xmod, req.hom).xmod;
        }
        return pullback_xmod(detail::load_as<RackXMod>(in.require("xmod"), "xmod"),
                             detail::load_as<RackHom>(in.require("hom"), "hom"))
            .xmod;
      }
      if (kind == "group-pullback")
        return group_pullback_xmod(detail::load_as<GroupXMod>(in.require("gxmod"), "gxmod"),
                                   detail::load_as<GroupHom>(in.require("ghom"), "ghom"))
            .xmod;
      throw io::ParseError("unknown construction '" + kind + "'");
    }();
    const auto text = io::emit(result);
    io::parse(text);
    if (out_path) {
      std::filesystem::path p(*out_path);
      if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
      std::ofstream f(p, std::ios::binary);
      f << text;
      if (!f) throw io::ParseError(*out_path + ": write failed");
    } else {
      out << text;
    }
    return kPass;
  } catch (const io::ParseError& e) {
    err << "rackx: " << e.what() << "\n";
    return kBadInput;
  } catch (const AxiomViolation& e) {
    err << "rackx: " << e.what() << "\n";
    return kFail;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "rackx: " << e.what() << "\n";
    return kBadInput;
  }
}

namespace detail {

inline Json certificate_json(const UniversalityCertificate& c, Index carrier, Index domain) {
  Json j;
  j["carrier-size"] = carrier;
  j["test-domain-size"] = domain;
  j["search-space"] = c.search_space;
  j["morphisms"] = c.morphisms;
  j["count"] = c.count;
  j["mediating"] = c.mediating;
  j["witnesses"] = Json::array();
  for (const auto& w : c.witnesses) j["witnesses"].push_back(w);
  return j;
}

inline Json adjunction_json(const AdjunctionReport& r) {
  Json j;
  j["rack-side"] = r.rack_side;
  j["group-side"] = r.group_side;
  j["matched"] = r.matched.size();
  j["unmatched-rack-side"] = Json::array();
  for (const auto& m : r.unmatched_rack_side) j["unmatched-rack-side"].push_back(m);
  j["unmatched-group-side"] = Json::array();
  for (const auto& m : r.unmatched_group_side) j["unmatched-group-side"].push_back(m);
  return j;
}

}  // namespace detail

/// Runs a verifier and prints a machine-readable certificate.
inline int certify(const std::string& kind, const Inputs& in, std::ostream& out,
                   std::ostream& err, const Options& opt = {}) {
  return detail::guarded("certify " + kind, out, err, opt, [&](Json& j) {
    j["kind"] = "certificate";
    detail::digests(j, in);
    if (kind == "universal") {
      std::optional<io::PullbackRequest> req;
      if (in.has("request")) {
        req = detail::load_as<io::PullbackRequest>(in.require("request"), "request");
      } else {
        req = io::PullbackRequest{detail::load_as<RackXMod>(in.require("xmod"), "xmod"),
                                  detail::load_as<RackHom>(in.require("hom"), "hom"),
                                  std::nullopt};
        if (in.has("test"))
          req->test = detail::load_as<RackXModMorphism>(in.require("test"), "test");
      }
      const auto pb = pullback_xmod(req->xmod, req->hom);
      const auto test = req->test ? *req->test : pb.projection();
      const auto cert = verify_universal_property(pb, test);
      j["result"] = detail::certificate_json(cert, pb.pairs.size(), test.src().domain().size());
      return cert.passed ? kPass : kFail;
    }
    if (kind == "adjunction") {
      const auto r = check_adjunction_bijection(
          detail::load_as<FiniteRack>(in.require("rack"), "rack"),
          detail::load_as<FiniteGroup>(in.require("group"), "group"));
      j["result"] = detail::adjunction_json(r);
      return r.passed ? kPass : kFail;
    }
    if (kind == "xmod-adjunction") {
      const auto r = check_xmod_adjunction(detail::load_as<RackXMod>(in.require("xmod"), "xmod"),
                                           detail::load_as<GroupXMod>(in.require("gxmod"), "gxmod"));
      j["result"] = detail::adjunction_json(r);
      return r.passed ? kPass : kFail;
    }
    if (kind == "conj-preserves") {
      const auto r = check_conj_preserves_pullback(
          detail::load_as<GroupXMod>(in.require("gxmod"), "gxmod"),
          detail::load_as<GroupHom>(in.require("ghom"), "ghom"));
      Json res;
      res["conj-of-pullback-size"] = r.conj_of_pullback.domain().size();
      res["pullback-of-conj-size"] = r.pullback_of_conj.domain().size();
      res["isomorphism-f1"] = r.isomorphism->f1();
      res["isomorphism-f0"] = r.isomorphism->f0();
      j["result"] = res;
      return r.passed ? kPass : kFail;
    }
    throw io::ParseError("unknown certification '" + kind + "'");
  });
}

/// Writes the enumerated racks of order ≤ bound together with the named
/// groups, homs and crossed modules used by the test suites.
inline int corpus(Index bound, const std::string& out_dir, std::ostream& out, std::ostream& err,
                  const Options& opt = {}) {
  return detail::guarded("corpus", out, err, opt, [&](Json& j) {
    namespace fs = std::filesystem;
    const fs::path root(out_dir);
    const Index limit = configured_bound();
    if (bound == 0 || bound > limit)
      throw io::ParseError("bound " + std::to_string(bound) + " outside 1.." +
                           std::to_string(limit) + " (raise RACKX_BOUND to allow more)");
    std::vector<std::string> files;
    auto put = [&](const std::string& rel, const io::Structure& s) {
      io::save(root / rel, s);
      files.push_back(rel);
    };
    Json counts = Json::object();
    for (Index n = 1; n <= bound; ++n) {
      const auto found = enumerate_pointed_racks(n, limit);
      counts[std::to_string(n)] = found.size();
      for (Index k = 0; k < found.size(); ++k)
        put("racks/enumerated/order" + std::to_string(n) + "-" + std::to_string(k) + ".json",
            found[k]);
    }
    put("racks/named/t2.json", corpus::t2());
    put("racks/named/cz2.json", corpus::cz2());
    put("racks/named/cs3.json", corpus::cs3());
    put("racks/named/r3.json", corpus::r3());
    put("racks/named/r3plus.json", corpus::r3_plus());
    put("racks/named/corez3plus.json", corpus::core_z3_plus());
    for (const auto& [name, g] : corpus::groups()) put("groups/" + name + ".json", g);
    put("homs/sgn.json", corpus::sgn());
    put("homs/psi.json", corpus::psi());
    put("homs/tau.json", corpus::tau());
    put("homs/sgn-rack.json", corpus::sgn_rack());
    for (const auto& [name, g] : corpus::group_xmods()) put("group-xmods/" + name + ".json", g);
    for (const auto& [name, x] : corpus::rack_xmods(std::min<Index>(bound, 3)))
      put("rack-xmods/" + name + ".json", x);
    const auto cs3 = corpus::cs3();
    put("pullback-requests/kernel-sgn.json",
        io::PullbackRequest{corpus::basepoint_in_cz2(), corpus::sgn_rack(), corpus::kernel_test()});
    put("pullback-requests/a3r-id.json",
        io::PullbackRequest{corpus::a3r_in_cs3(), RackHom::identity(cs3), std::nullopt});
    put("pullback-requests/a3r-tau.json",
        io::PullbackRequest{corpus::a3r_in_cs3(), conj_hom(corpus::tau()), std::nullopt});
    for (const auto& c : corpus::group_pullback_cases()) {
      const std::string stem = "group-pullbacks/" + c.name.substr(0, c.name.find('|')) + "--" +
                               c.name.substr(c.name.find('|') + 1);
      put(stem + ".gxmod.json", c.xmod);
      put(stem + ".ghom.json", c.phi);
    }
    std::sort(files.begin(), files.end());
    std::ofstream index(root / "index.json", std::ios::binary);
    Json idx;
    idx["format-version"] = io::kFormatVersion;
    idx["kind"] = "corpus-index";
    idx["bound"] = bound;
    idx["files"] = files;
    index << io::to_text(idx);
    j["bound"] = bound;
    j["racks-per-order"] = counts;
    j["files"] = files.size();
    return kPass;
  });
}

}  // namespace rackx::cli
