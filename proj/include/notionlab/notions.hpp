#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <notionlab/props.hpp>

namespace notionlab {

enum class Family { Sender, Receiver, Impartial };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::Sender: return "sender";
    case Family::Receiver: return "receiver";
    case Family::Impartial: return "impartial";
  }
  return "?";
}

enum class CorruptionPolicy { Adaptive, Static, None };
enum class CorruptionBatch { Unrestricted, EqualBehavior, NoComm, NoSend, NoReceive };

struct NotionOptions {
  bool session = false;
  CorruptionPolicy policy = CorruptionPolicy::Adaptive;
  CorruptionBatch batch = CorruptionBatch::Unrestricted;
  std::optional<int> cr_bound;

  friend bool operator==(const NotionOptions&, const NotionOptions&) = default;
};

struct NotionSpec {
  std::string name;  // base name without option decorations
  std::set<Atom> atoms;
  NotionOptions options;
  Family family = Family::Impartial;
  std::string cluster;
  bool core = true;

  bool has_complex() const {
    return std::any_of(atoms.begin(), atoms.end(), is_complex_atom);
  }
  bool has_stages() const { return atoms.count(Atom::TS) || atoms.count(Atom::TR); }
  PairingMode pairing() const {
    return has_complex() ? PairingMode::AllPairs : PairingMode::InstanceZero;
  }
};

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(std::string what, std::size_t pos)
      : std::runtime_error(std::move(what) + " at position " + std::to_string(pos)),
        position(pos) {}
};

namespace detail {

struct NotionRow {
  const char* name;
  std::set<Atom> atoms;
  Family family;
  const char* cluster;
  bool core = true;
};

inline const std::vector<NotionRow>& notion_rows() {
  using A = Atom;
  static const std::vector<NotionRow> rows = {
      // impartial
      {"(SR)!L", {A::Something, A::ESR, A::MSR}, Family::Impartial, "message_observability"},
      {"(SR)!O", {A::Something, A::ESR, A::RSR}, Family::Impartial, "message_observability"},
      {"M!O[M!L]", {A::Something, A::Q, A::Qp}, Family::Impartial,
       "both_side_message_unlinkability"},
      {"M!O", {A::Something, A::EM}, Family::Impartial, "sender_receiver_linkability"},
      {"M!O-|M|", {A::Something, A::EM, A::LenEq}, Family::Impartial,
       "sender_receiver_linkability"},
      {"!O", {A::Something}, Family::Impartial, "both_side_unobservability"},
      {"C!O", {A::Nothing}, Family::Impartial, "both_side_unobservability"},
      // sender protections with receiver-message linkability
      {"S!O", {A::Something, A::ES}, Family::Sender, "receiver_message_linkability"},
      {"S!O-|U|", {A::Something, A::ES, A::CardU}, Family::Sender, "receiver_message_linkability"},
      {"S!O-H", {A::Something, A::ES, A::H}, Family::Sender, "receiver_message_linkability"},
      {"S!O-P", {A::Something, A::ES, A::P}, Family::Sender, "receiver_message_linkability"},
      {"SF!L", {A::Something, A::ES, A::U}, Family::Sender, "receiver_message_linkability"},
      {"SF!L-H", {A::Something, A::ES, A::U, A::H}, Family::Sender,
       "receiver_message_linkability"},
      {"SF!L-P", {A::Something, A::ES, A::U, A::P}, Family::Sender,
       "receiver_message_linkability"},
      {"SM!L", {A::Something, A::ES, A::Q}, Family::Sender, "receiver_message_linkability"},
      {"SM!L-P", {A::Something, A::ES, A::Q, A::P}, Family::Sender,
       "receiver_message_linkability"},
      {"(2S)!L", {A::Something, A::ES, A::TS}, Family::Sender, "receiver_message_linkability"},
      // sender protections with receiver observability
      {"S!O[M!O]", {A::Something, A::ESM}, Family::Sender, "receiver_observability"},
      {"S!O[M!O-|M|]", {A::Something, A::ESM, A::LenEq}, Family::Sender,
       "receiver_observability"},
      {"(SM)!O", {A::Something, A::ESM, A::RSM}, Family::Sender, "receiver_observability"},
      {"(SM)!L", {A::Something, A::ESM, A::MSM}, Family::Sender, "receiver_observability"},
      // sender protections that also hide messages
      {"S!O{R!O-|U'|}", {A::Something, A::CardUp}, Family::Sender,
       "both_side_message_unlinkability"},
      {"S!O{R!O-H'}", {A::Something, A::Hp}, Family::Sender, "both_side_message_unlinkability"},
      {"S!O{R!O-P'}", {A::Something, A::Pp}, Family::Sender, "both_side_message_unlinkability"},
      {"S!O{RF!L}", {A::Something, A::Up}, Family::Sender, "both_side_message_unlinkability"},
      {"S!O{RF!L-H'}", {A::Something, A::Up, A::Hp}, Family::Sender,
       "both_side_message_unlinkability"},
      {"S!O{RF!L-P'}", {A::Something, A::Up, A::Pp}, Family::Sender,
       "both_side_message_unlinkability"},
      {"S!O{RM!L}", {A::Something, A::Qp}, Family::Sender, "both_side_message_unlinkability"},
      {"S!O{RM!L-P'}", {A::Something, A::Qp, A::Pp}, Family::Sender,
       "both_side_message_unlinkability"},
      // receiver protections with sender-message linkability
      {"R!O", {A::Something, A::ER}, Family::Receiver, "sender_message_linkability"},
      {"R!O-|U'|", {A::Something, A::ER, A::CardUp}, Family::Receiver,
       "sender_message_linkability"},
      {"R!O-H'", {A::Something, A::ER, A::Hp}, Family::Receiver, "sender_message_linkability"},
      {"R!O-P'", {A::Something, A::ER, A::Pp}, Family::Receiver, "sender_message_linkability"},
      {"RF!L", {A::Something, A::ER, A::Up}, Family::Receiver, "sender_message_linkability"},
      {"RF!L-H'", {A::Something, A::ER, A::Up, A::Hp}, Family::Receiver,
       "sender_message_linkability"},
      {"RF!L-P'", {A::Something, A::ER, A::Up, A::Pp}, Family::Receiver,
       "sender_message_linkability"},
      {"RM!L", {A::Something, A::ER, A::Qp}, Family::Receiver, "sender_message_linkability"},
      {"RM!L-P'", {A::Something, A::ER, A::Qp, A::Pp}, Family::Receiver,
       "sender_message_linkability"},
      {"(2R)!L", {A::Something, A::ER, A::TR}, Family::Receiver, "sender_message_linkability"},
      // receiver protections with sender observability
      {"R!O[M!O]", {A::Something, A::ERM}, Family::Receiver, "sender_observability"},
      {"R!O[M!O-|M|]", {A::Something, A::ERM, A::LenEq}, Family::Receiver,
       "sender_observability"},
      {"(RM)!O", {A::Something, A::ERM, A::RRM}, Family::Receiver, "sender_observability"},
      {"(RM)!L", {A::Something, A::ERM, A::MRM}, Family::Receiver, "sender_observability"},
      // receiver protections that also hide messages
      {"R!O{S!O-|U|}", {A::Something, A::CardU}, Family::Receiver,
       "both_side_message_unlinkability"},
      {"R!O{S!O-H}", {A::Something, A::H}, Family::Receiver, "both_side_message_unlinkability"},
      {"R!O{S!O-P}", {A::Something, A::P}, Family::Receiver, "both_side_message_unlinkability"},
      {"R!O{SF!L}", {A::Something, A::U}, Family::Receiver, "both_side_message_unlinkability"},
      {"R!O{SF!L-H}", {A::Something, A::U, A::H}, Family::Receiver,
       "both_side_message_unlinkability"},
      {"R!O{SF!L-P}", {A::Something, A::U, A::P}, Family::Receiver,
       "both_side_message_unlinkability"},
      {"R!O{SM!L}", {A::Something, A::Q}, Family::Receiver, "both_side_message_unlinkability"},
      {"R!O{SM!L-P}", {A::Something, A::Q, A::P}, Family::Receiver,
       "both_side_message_unlinkability"},
      // auxiliary notions from deployed-system analyses
      {"LS!O", {A::EDia}, Family::Sender, "online_unobservability", false},
      {"LR!O", {A::EDia}, Family::Receiver, "online_unobservability", false},
      {"S!O'", {A::NoSend, A::ES}, Family::Sender, "online_unobservability", false},
      {"R!O'", {A::NoSendp, A::ER}, Family::Receiver, "online_unobservability", false},
      {"R^HT_SA", {A::Something, A::G}, Family::Sender, "pseudonym_linkability", false},
      {"R^HT_SL", {A::Something, A::Q, A::G}, Family::Sender, "pseudonym_linkability", false},
  };
  return rows;
}

}  // namespace detail

inline std::vector<NotionSpec> registry() {
  std::vector<NotionSpec> out;
  for (const detail::NotionRow& r : detail::notion_rows()) {
    NotionSpec s;
    s.name = r.name;
    s.atoms = r.atoms;
    s.family = r.family;
    s.cluster = r.cluster;
    s.core = r.core;
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<NotionSpec> core_registry() {
  std::vector<NotionSpec> out;
  for (NotionSpec& s : registry())
    if (s.core) out.push_back(std::move(s));
  return out;
}

inline std::string print_notion(const NotionSpec& s) {
  std::string out;
  if (s.options.session) out += "sess-";
  if (s.options.policy == CorruptionPolicy::Static) out += "static-";
  if (s.options.policy == CorruptionPolicy::None) out += "nocorr-";
  switch (s.options.batch) {
    case CorruptionBatch::Unrestricted: break;
    case CorruptionBatch::EqualBehavior: out += "corr_c-"; break;
    case CorruptionBatch::NoComm: out += "corr_n-"; break;
    case CorruptionBatch::NoSend: out += "corr_s-"; break;
    case CorruptionBatch::NoReceive: out += "corr_r-"; break;
  }
  out += s.name;
  if (s.options.cr_bound) out += "_CR" + std::to_string(*s.options.cr_bound);
  return out;
}

inline NotionSpec parse_notion(std::string_view name) {
  std::string_view rest = name;
  std::size_t pos = 0;
  NotionOptions opt;
  auto eat = [&](std::string_view prefix) {
    if (rest.substr(0, prefix.size()) == prefix) {
      rest.remove_prefix(prefix.size());
      pos += prefix.size();
      return true;
    }
    return false;
  };
  if (eat("sess-")) opt.session = true;
  if (eat("static-")) opt.policy = CorruptionPolicy::Static;
  else if (eat("nocorr-")) opt.policy = CorruptionPolicy::None;
  if (eat("corr_c-")) opt.batch = CorruptionBatch::EqualBehavior;
  else if (eat("corr_n-")) opt.batch = CorruptionBatch::NoComm;
  else if (eat("corr_s-")) opt.batch = CorruptionBatch::NoSend;
  else if (eat("corr_r-")) opt.batch = CorruptionBatch::NoReceive;

  std::string base(rest);
  if (auto cr = base.rfind("_CR"); cr != std::string::npos) {
    const std::string digits = base.substr(cr + 3);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                       [](char c) { return c >= '0' && c <= '9'; }))
      throw ParseError("invalid challenge-row bound", pos + cr + 3);
    opt.cr_bound = std::stoi(digits);
    base = base.substr(0, cr);
  }
  for (const detail::NotionRow& r : detail::notion_rows()) {
    if (base == r.name) {
      NotionSpec s;
      s.name = r.name;
      s.atoms = r.atoms;
      s.family = r.family;
      s.cluster = r.cluster;
      s.core = r.core;
      s.options = opt;
      return s;
    }
  }
  throw ParseError("unknown notion '" + base + "'", pos);
}

// Published goals of other analysis frameworks expressed in this registry's names.
inline const std::map<std::string, std::string>& framework_aliases() {
  static const std::map<std::string, std::string> aliases = {
      {"anoa:alpha_SA", "sess-static-corr_c-S!O_CR1"},
      {"anoa:alpha_RA", "sess-static-corr_c-R!O[M!O-|M|]_CR1"},
      {"anoa:alpha_REL", "sess-static-corr_c-(SR)!O_CR2"},
      {"anoa:alpha_UL", "sess-static-corr_c-(2S)!L_CR2"},
      {"anoa:alpha_sSA", "sess-static-corr_c-S!O"},
      {"anoa:alpha_sRA", "sess-static-corr_c-R!O[M!O-|M|]"},
      {"anoa:alpha_sREL", "sess-static-corr_c-(SR)!O"},
      {"anoa:alpha_sUL", "sess-static-corr_c-(2S)!L"},
      {"bohli:S/SA", "!O"},
      {"bohli:R/SA", "!O"},
      {"bohli:R/SUP", "S!O{R!O-|U'|}"},
      {"bohli:R/WUP", "S!O{R!O-H'}"},
      {"bohli:R/PS", "S!O{R!O-P'}"},
      {"bohli:R/SUU", "S!O{RF!L}"},
      {"bohli:R/WUU", "S!O{RF!L-H'}"},
      {"bohli:R/AN", "S!O{RF!L-P'}"},
      {"bohli:R/WU", "S!O{RM!L}"},
      {"bohli:R/WA", "S!O{RM!L-P'}"},
      {"bohli:S/SA^o", "S!O"},
      {"bohli:S/SUP^o", "S!O-|U|"},
      {"bohli:S/WUP^o", "S!O-H"},
      {"bohli:S/PS^o", "S!O-P"},
      {"bohli:S/SUU^o", "SF!L"},
      {"bohli:S/WUU^o", "SF!L-H"},
      {"bohli:S/AN^o", "SF!L-P"},
      {"bohli:S/WU^o", "SM!L"},
      {"bohli:S/WA^o", "SM!L-P"},
      {"hevia:UO", "nocorr-C!O"},
      {"hevia:SRA", "nocorr-!O"},
      {"hevia:SA*", "nocorr-S!O{RM!L}"},
      {"hevia:SA", "nocorr-S!O"},
      {"hevia:UL", "nocorr-M!O[M!L]"},
      {"hevia:SUL", "nocorr-SM!L"},
      {"gelernter:R^HT_SA", "R^HT_SA"},
      {"gelernter:R^HT_SL", "R^HT_SL"},
  };
  return aliases;
}

inline NotionSpec resolve_notion(std::string_view name) {
  auto it = framework_aliases().find(std::string(name));
  if (it != framework_aliases().end()) return parse_notion(it->second);
  return parse_notion(name);
}

}  // namespace notionlab
