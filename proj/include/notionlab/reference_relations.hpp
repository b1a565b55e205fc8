#pragma once

// Frozen expected classification of every ordered (row, column) notion pair the
// hierarchy consistency check runs against. "=" marks the diagonal, "=>" an
// expected implication; any other label names the separation argument expected
// to defeat the implication. Rows cover the sender and impartial families;
// columns cover the full core registry.

#include <array>
#include <string_view>

namespace notionlab::reference {

inline constexpr std::array<std::string_view, 29> kRelationRows = {
    "C!O", "!O", "M!O[M!L]", "M!O", "M!O-|M|",
    "(SR)!O", "(SR)!L", "S!O{R!O-|U'|}", "S!O{R!O-H'}", "S!O{R!O-P'}",
    "S!O{RF!L}", "S!O{RF!L-H'}", "S!O{RF!L-P'}", "S!O{RM!L}", "S!O{RM!L-P'}",
    "S!O[M!O]", "S!O[M!O-|M|]", "S!O", "S!O-|U|", "S!O-H",
    "S!O-P", "SF!L", "SF!L-H", "SF!L-P", "SM!L",
    "SM!L-P", "(2S)!L", "(SM)!O", "(SM)!L"};

inline constexpr std::array<std::string_view, 51> kRelationCols = {
    "C!O", "!O", "M!O[M!L]", "M!O", "M!O-|M|",
    "(SR)!O", "(SR)!L", "S!O{R!O-|U'|}", "S!O{R!O-H'}", "S!O{R!O-P'}",
    "S!O{RF!L}", "S!O{RF!L-H'}", "S!O{RF!L-P'}", "S!O{RM!L}", "S!O{RM!L-P'}",
    "S!O[M!O]", "S!O[M!O-|M|]", "S!O", "S!O-|U|", "S!O-H",
    "S!O-P", "SF!L", "SF!L-H", "SF!L-P", "SM!L",
    "SM!L-P", "(2S)!L", "(SM)!O", "(SM)!L", "R!O{S!O-|U|}",
    "R!O{S!O-H}", "R!O{S!O-P}", "R!O{SF!L}", "R!O{SF!L-H}", "R!O{SF!L-P}",
    "R!O{SM!L}", "R!O{SM!L-P}", "R!O[M!O]", "R!O[M!O-|M|]", "R!O",
    "R!O-|U'|", "R!O-H'", "R!O-P'", "RF!L", "RF!L-H'",
    "RF!L-P'", "RM!L", "RM!L-P'", "(2R)!L", "(RM)!O",
    "(RM)!L"};

inline constexpr std::array<std::array<std::string_view, 51>, 29> kRelationCells = {{
    // C!O
    {{"=", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "=>", "=>", "=>", "=>"}},
    // !O
    {{"P1", "=", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "=>", "=>", "=>", "=>"}},
    // M!O[M!L]
    {{"(P1)", "(P2)", "=", "=>", "=>", "P2", "=>", "(P2)", "(P2)",
      "(P2)", "(P2)", "(P2)", "(P2)", "(P2)", "(P2)", "(P2)", "(P2)", "(P2)",
      "(PA'*)", "(PA'*)", "(PA'*)", "(PA'*)", "(PA'*)", "(PA'*)", "=>", "=>", "(P4')",
      "=>", "=>", "(P2)", "(P2)", "(P2)", "(P2)", "(P2)", "(P2)", "(P2)",
      "(P2)", "(P2)", "(P2)", "(P2)", "(PA*)", "(PA*)", "(PA*)", "(PA*)", "(PA*)",
      "(PA*)", "=>", "=>", "(P4)", "=>", "=>"}},
    // M!O
    {{"(P1)", "(P3)", "(P3)", "=", "=>", "(P2)", "P3", "(P3)", "(P3)",
      "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)",
      "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P4')",
      "=>", "=>", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)",
      "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)",
      "(P3)", "(P3)", "(P3)", "(P4)", "=>", "=>"}},
    // M!O-|M|
    {{"(P1)", "(P3)", "(P3)", "(P17)", "=", "(P2)", "(P3)", "(P3)", "(P3)",
      "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)",
      "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P4')",
      "P17'", "P18'", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)",
      "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)", "(P3)",
      "(P3)", "(P3)", "(P3)", "(P4)", "(P17)", "(P18)"}},
    // (SR)!O
    {{"(P1)", "(P5)", "(P5)", "(P6)", "(P6)", "=", "P16", "(P16)", "(P16)",
      "(P16)", "(P16)", "(P16)", "(P16)", "(P16)", "(P16)", "(P16)", "(P16)", "(P16)",
      "(P16)", "(P16)", "(P16)", "(P16)", "(P16)", "(P16)", "(P16)", "(P16)", "(P4')",
      "(P17')", "(P18')", "(P16)", "(P16)", "(P16)", "(P16)", "(P16)", "(P16)", "(P16)",
      "(P16)", "(P16)", "(P16)", "(P16)", "(P16)", "(P16)", "(P16)", "(P16)", "(P16)",
      "(P16)", "(P16)", "(P16)", "(P4)", "(P17)", "(P18)"}},
    // (SR)!L
    {{"(P1)", "(P5)", "(P5)", "(P6)", "(P6)", "(P7)", "=", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8')", "(P8')", "(P8')",
      "(P8')", "(P8')", "(P8')", "(P8')", "(P8')", "(P8')", "(P8')", "(P8')", "(P4')",
      "(P19)", "(P20)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P4)", "(P17)", "(P18)"}},
    // S!O{R!O-|U'|}
    {{"(P1)", "(P4)", "=>", "=>", "=>", "=>", "=>", "=", "=>",
      "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)",
      "(PA)", "(PA)", "(PA)", "PA", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "=>", "P4", "=>", "=>"}},
    // S!O{R!O-H'}
    {{"(P1)", "(P4)", "=>", "=>", "=>", "=>", "=>", "(PA)", "=",
      "=>", "(PA)", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)",
      "(PA)", "(PA)", "(PA)", "PA", "PA", "=>", "=>", "PA", "=>",
      "=>", "=>", "=>", "(P4)", "=>", "=>"}},
    // S!O{R!O-P'}
    {{"(P1)", "(P6)", "(P6)", "(P6)", "P6", "=>", "=>", "(PA)", "(PA)",
      "=", "(PA)", "(PA)", "=>", "(PA)", "=>", "(P6)", "(P6)", "=>",
      "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)",
      "(PA)", "(PA)", "(PA)", "PA", "PA", "PA", "=>", "PA", "PA",
      "=>", "PA", "=>", "(P4)", "P24", "P9"}},
    // S!O{RF!L}
    {{"(P1)", "(P4)", "=>", "=>", "=>", "=>", "=>", "(PA)", "(PA)",
      "(PA)", "=", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)",
      "(PA)", "(PA)", "(PA)", "PA", "PA", "PA", "PA", "=>", "=>",
      "=>", "=>", "=>", "(P4)", "=>", "=>"}},
    // S!O{RF!L-H'}
    {{"(P1)", "(P4)", "=>", "=>", "=>", "=>", "=>", "(PA)", "(PA)",
      "(PA)", "(PA)", "=", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)",
      "(PA)", "(PA)", "(PA)", "PA", "PA", "PA", "PA", "PA", "=>",
      "=>", "=>", "=>", "(P4)", "=>", "=>"}},
    // S!O{RF!L-P'}
    {{"(P1)", "(P6)", "(P6)", "(P6)", "(P6)", "=>", "=>", "(PA)", "(PA)",
      "(PA)", "(PA)", "(PA)", "=", "(PA)", "=>", "(P6)", "(P6)", "=>",
      "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)",
      "(PA)", "(PA)", "(PA)", "PA", "PA", "PA", "PA", "PA", "PA",
      "=>", "PA", "=>", "(P4)", "(P24)", "(P9)"}},
    // S!O{RM!L}
    {{"(P1)", "(P4)", "=>", "=>", "=>", "=>", "=>", "(PA)", "(PA)",
      "(PA)", "(PA)", "(PA)", "(PA)", "=", "=>", "=>", "=>", "=>",
      "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)",
      "(PA)", "(PA)", "(PA)", "PA", "PA", "PA", "PA", "PA", "PA",
      "PA*", "=>", "=>", "(P4)", "=>", "=>"}},
    // S!O{RM!L-P'}
    {{"(P1)", "(P6)", "(P6)", "(P6)", "(P6)", "=>", "=>", "(PA)", "(PA)",
      "(PA)", "(PA)", "(PA)", "(PA)", "(PA)", "=", "(P6)", "(P6)", "=>",
      "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)", "(PA)",
      "(PA)", "(PA)", "(PA)", "PA", "PA", "PA", "PA", "PA", "PA",
      "PA", "PA", "=>", "(P4)", "(P24)", "(P9)"}},
    // S!O[M!O]
    {{"(P1)", "(P5)", "P5", "=>", "=>", "=>", "=>", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "=", "=>", "=>",
      "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "P8", "(P4)", "=>", "=>"}},
    // S!O[M!O-|M|]
    {{"(P1)", "(P5)", "(P5)", "(P17)", "=>", "=>", "=>", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P17)", "=", "=>",
      "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P4)", "P17", "P18"}},
    // S!O
    {{"(P1)", "(P5)", "(P5)", "(P6)", "(P6)", "=>", "=>", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P6)", "(P6)", "=",
      "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "=>",
      "=>", "=>", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P4)", "(P17)", "(P18)"}},
    // S!O-|U|
    {{"(P1)", "(P5)", "(P5)", "(P6)", "(P6)", "P7", "=>", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(PB)", "(PB)", "PB",
      "=", "=>", "=>", "=>", "=>", "=>", "=>", "=>", "(P4')",
      "P19", "=>", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P4)", "(P17)", "(P18)"}},
    // S!O-H
    {{"(P1)", "(P5)", "(P5)", "(P6)", "(P6)", "(P7)", "=>", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(PB)", "(PB)", "(PB)",
      "PB", "=", "=>", "(PB)", "=>", "=>", "=>", "=>", "(P4')",
      "(P19)", "=>", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P4)", "(P17)", "(P18)"}},
    // S!O-P
    {{"(P1)", "(P5)", "(P5)", "(P6)", "(P6)", "(P7)", "=>", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(PB)", "(PB)", "(PB)",
      "PB", "PB", "=", "PB", "PB", "=>", "PB", "=>", "(P4')",
      "(P19)", "P20", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P4)", "(P17)", "(P18)"}},
    // SF!L
    {{"(P1)", "(P5)", "(P5)", "(P6)", "(P6)", "(P7)", "=>", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(PB)", "(PB)", "(PB)",
      "PB", "PB", "PB", "=", "=>", "=>", "=>", "=>", "(P4')",
      "(P19)", "=>", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P4)", "(P17)", "(P18)"}},
    // SF!L-H
    {{"(P1)", "(P5)", "(P5)", "(P6)", "(P6)", "(P7)", "=>", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(PB)", "(PB)", "(PB)",
      "PB", "PB", "PB", "PB", "=", "=>", "=>", "=>", "(P4')",
      "(P19)", "=>", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P4)", "(P17)", "(P18)"}},
    // SF!L-P
    {{"(P1)", "(P5)", "(P5)", "(P6)", "(P6)", "(P7)", "=>", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(PB)", "(PB)", "(PB)",
      "PB", "PB", "PB", "PB", "PB", "=", "PB", "=>", "(P4')",
      "(P19)", "(P20)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P4)", "(P17)", "(P18)"}},
    // SM!L
    {{"(P1)", "(P5)", "(P5)", "(P6)", "(P6)", "(P7)", "=>", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(PB)", "(PB)", "(PB)",
      "PB", "PB", "PB", "PB", "PB", "PB", "=", "=>", "(P4')",
      "(P19)", "=>", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P4)", "(P17)", "(P18)"}},
    // SM!L-P
    {{"(P1)", "(P5)", "(P5)", "(P6)", "(P6)", "(P7)", "=>", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(PB)", "(PB)", "(PB)",
      "PB", "PB", "PB", "PB", "PB", "PB", "PB", "=", "(P4')",
      "(P19)", "(P20)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)", "(P8)",
      "(P8)", "(P8)", "(P8)", "(P4)", "(P17)", "(P18)"}},
    // (2S)!L
    {{"(P1)", "(P5)", "(P5)", "(P6)", "(P6)", "P10", "P11", "(P11)", "(P11)",
      "(P11)", "(P11)", "(P11)", "(P11)", "(P11)", "(P11)", "(P11)", "(P11)", "(P11)",
      "(P11)", "(P11)", "(P11)", "(P11)", "(P11)", "(P11)", "(P11)", "(P11)", "=",
      "P21", "P22", "(P11)", "(P11)", "(P11)", "(P11)", "(P11)", "(P11)", "(P11)",
      "(P11)", "(P11)", "(P11)", "(P11)", "(P11)", "(P11)", "(P11)", "(P11)", "(P11)",
      "(P11)", "(P11)", "(P11)", "(P4)", "(P17)", "(P18)"}},
    // (SM)!O
    {{"(P1)", "(P5)", "(P5)", "(P6)", "(P6)", "P12", "P13", "(P13)", "(P13)",
      "(P13)", "(P13)", "(P13)", "(P13)", "(P13)", "(P13)", "(P13)", "(P13)", "(P13)",
      "(P13)", "(P13)", "(P13)", "(P13)", "(P13)", "(P13)", "(P13)", "(P13)", "(P4')",
      "=", "P23", "(P13)", "(P13)", "(P13)", "(P13)", "(P13)", "(P13)", "(P13)",
      "(P13)", "(P13)", "(P13)", "(P13)", "(P13)", "(P13)", "(P13)", "(P13)", "(P13)",
      "(P13)", "(P13)", "(P13)", "(P4)", "(P17)", "(P18)"}},
    // (SM)!L
    {{"(P1)", "(P5)", "(P5)", "(P6)", "(P6)", "P14", "P15", "(P15)", "(P15)",
      "(P15)", "(P15)", "(P15)", "(P15)", "(P15)", "(P15)", "(P15)", "(P15)", "(P15)",
      "(P15)", "(P15)", "(P15)", "(P15)", "(P15)", "(P15)", "(P15)", "(P15)", "(P4')",
      "(P19)", "=", "(P15)", "(P15)", "(P15)", "(P15)", "(P15)", "(P15)", "(P15)",
      "(P15)", "(P15)", "(P15)", "(P15)", "(P15)", "(P15)", "(P15)", "(P15)", "(P15)",
      "(P15)", "(P15)", "(P15)", "(P4)", "(P17)", "(P18)"}},
}};

}  // namespace notionlab::reference
