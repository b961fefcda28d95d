#include "ctree/label.hpp"

#include "ctree/error.hpp"

namespace ctree {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::Syntax: return "SyntaxError";
        case ErrorCode::SyntaxShape: return "SyntaxShapeError";
        case ErrorCode::Arity: return "ArityError";
        case ErrorCode::LevelMisalignment: return "LevelMisalignment";
        case ErrorCode::IsomorphicLeftChildren: return "IsomorphicLeftChildren";
        case ErrorCode::NotLowerIsomorphic: return "NotLowerIsomorphic";
        case ErrorCode::InvalidTree: return "InvalidTree";
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::NotAParent: return "NotAParent";
        case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
        case ErrorCode::Decode: return "DecodeError";
        case ErrorCode::EmptyInterval: return "EmptyInterval";
        case ErrorCode::InvalidPoint: return "InvalidPoint";
        case ErrorCode::InfiniteInterval: return "InfiniteInterval";
        case ErrorCode::NotIsomorphic: return "NotIsomorphic";
        case ErrorCode::LabelMismatch: return "LabelMismatch";
        case ErrorCode::NotStrictlyBelow: return "NotStrictlyBelow";
        case ErrorCode::NotInGamma: return "NotInGamma";
        case ErrorCode::SignatureMismatch: return "SignatureMismatch";
    }
    return "Error";
}

Label Label::qn(int n) {
    if (n < 2) throw Error(ErrorCode::Arity, "Q_n needs n >= 2, got " + std::to_string(n));
    return {LabelKind::Qn, n};
}

Label Label::qndot(int n) {
    if (n < 2) throw Error(ErrorCode::Arity, "Qd_n needs n >= 2, got " + std::to_string(n));
    return {LabelKind::QnDot, n};
}

std::size_t Label::arity() const {
    switch (kind) {
        case LabelKind::Singleton: return 0;
        case LabelKind::Z:
        case LabelKind::Q: return 1;
        case LabelKind::WStar:
        case LabelKind::QDot: return 2;
        case LabelKind::Qn: return static_cast<std::size_t>(n);
        case LabelKind::QnDot: return static_cast<std::size_t>(n) + 1;
    }
    return 0;
}

bool Label::has_endpoint() const {
    return kind == LabelKind::WStar || kind == LabelKind::QDot || kind == LabelKind::QnDot;
}

bool Label::is_dense() const {
    return kind == LabelKind::Q || kind == LabelKind::QDot || kind == LabelKind::Qn ||
           kind == LabelKind::QnDot;
}

std::string to_string(const Label& label) {
    switch (label.kind) {
        case LabelKind::Singleton: return "1";
        case LabelKind::Z: return "Z";
        case LabelKind::WStar: return "w*";
        case LabelKind::Q: return "Q";
        case LabelKind::QDot: return "Qd";
        case LabelKind::Qn: return "Q_" + std::to_string(label.n);
        case LabelKind::QnDot: return "Qd_" + std::to_string(label.n);
    }
    return "?";
}

std::string label_class(const Label& label) {
    switch (label.kind) {
        case LabelKind::Singleton: return "1";
        case LabelKind::Z:
        case LabelKind::WStar: return "Z~w*";
        case LabelKind::Q:
        case LabelKind::QDot: return "Q~Qd";
        case LabelKind::Qn:
        case LabelKind::QnDot: return "Q_" + std::to_string(label.n) + "~Qd_" + std::to_string(label.n);
    }
    return "?";
}

bool label_lower_equiv(const Label& a, const Label& b) { return label_class(a) == label_class(b); }

}  // namespace ctree
