#pragma once

namespace ucp {

// 1-based, inclusive source positions. Columns count bytes.
struct SourceSpan {
    int line_start = 0;
    int col_start = 0;
    int line_end = 0;
    int col_end = 0;

    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

inline SourceSpan merge(const SourceSpan& a, const SourceSpan& b) {
    SourceSpan s = a;
    if (b.line_start < s.line_start ||
        (b.line_start == s.line_start && b.col_start < s.col_start)) {
        s.line_start = b.line_start;
        s.col_start = b.col_start;
    }
    if (b.line_end > s.line_end ||
        (b.line_end == s.line_end && b.col_end > s.col_end)) {
        s.line_end = b.line_end;
        s.col_end = b.col_end;
    }
    return s;
}

}  // namespace ucp
