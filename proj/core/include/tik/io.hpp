#pragma once

#include <string>
#include <variant>

#include "tik/groupcorr.hpp"
#include "tik/oracle.hpp"

namespace tik {

// Text object files: `#` starts a comment, tokens are whitespace separated, the first
// content line is the header. Graph vertices are 1-based on disk and 0-based in memory.

enum class SpaceKind { General, Alternating, Symmetric };
const char* space_keyword(SpaceKind k);

// Square n x n x m tensor read as m frontal slices; the kind is checked on parse.
struct SpaceObject {
  SpaceKind kind = SpaceKind::General;
  Tensor3 slices;
  bool operator==(const SpaceObject& o) const { return kind == o.kind && slices == o.slices; }
};

// Codes are plain Mat generator matrices.
using Object = std::variant<Tensor3, TensorD, SpaceObject, Mat, Graph, AlgebraSC, FormD, MatrixGroup, Witness>;

// Throws Error(Parse) with a 1-based line number in the message.
Object parse_object(const std::string& text);
std::string emit_object(const Object& obj);

Object read_object_file(const std::string& path);
void write_object_file(const std::string& path, const Object& obj);

// Typed views per problem; a mismatched object kind is a Parse error naming both.
Instance instance_from_object(Problem problem, const Object& obj);
// Matrix spaces are written as altspace or symspace when their slices are, else matspace.
Object object_from_instance(Problem problem, const Instance& x);

bool operator==(const MatrixGroup& a, const MatrixGroup& b);

}  // namespace tik
