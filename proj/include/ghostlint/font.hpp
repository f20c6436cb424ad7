#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "ghostlint/raster.hpp"
#include "ghostlint/textnorm.hpp"

namespace ghostlint {

// 5x10 bitmap font. Rows 0..6 sit above the baseline (cap height 7 rows),
// rows 7..9 hold descenders. Advance is 6 columns. One em = 10 rows, so at
// size S: cap height 0.7*S, ascent 0.7*S, descent 0.3*S, advance 0.6*S.
inline constexpr int kFontCols = 5;
inline constexpr int kFontRows = 10;
inline constexpr int kFontAdvanceCols = 6;
inline constexpr int kFontBaselineRow = 7; // rows [0,7) above baseline
inline constexpr double kFontAscentEm = 0.7;
inline constexpr double kFontDescentEm = 0.3;
inline constexpr double kFontAdvanceEm = 0.6;

struct Glyph {
    std::array<std::uint8_t, kFontRows> rows{}; // bit c (0..4) = column c inked
    bool bit(int col, int row) const {
        return (rows[row] >> col) & 1u;
    }
    bool blank() const {
        for (auto r : rows)
            if (r) return false;
        return true;
    }
};

namespace fontdata {

// Each entry: glyph char, start-row digit, then rows as '.'/'X' art.
// Unlisted rows are blank. Shapes are deliberately distinct where ASCII
// lookalikes would otherwise collapse to the same ink (0/O, 1/l/I/|).
inline constexpr const char* kGlyphArt[] = {
    "A0\n.XXX.\nX...X\nX...X\nXXXXX\nX...X\nX...X\nX...X",
    "B0\nXXXX.\nX...X\nX...X\nXXXX.\nX...X\nX...X\nXXXX.",
    "C0\n.XXX.\nX...X\nX....\nX....\nX....\nX...X\n.XXX.",
    "D0\nXXXX.\nX...X\nX...X\nX...X\nX...X\nX...X\nXXXX.",
    "E0\nXXXXX\nX....\nX....\nXXXX.\nX....\nX....\nXXXXX",
    "F0\nXXXXX\nX....\nX....\nXXXX.\nX....\nX....\nX....",
    "G0\n.XXX.\nX...X\nX....\nX.XXX\nX...X\nX...X\n.XXXX",
    "H0\nX...X\nX...X\nX...X\nXXXXX\nX...X\nX...X\nX...X",
    "I0\nXXXXX\n..X..\n..X..\n..X..\n..X..\n..X..\nXXXXX",
    "J0\n..XXX\n...X.\n...X.\n...X.\n...X.\nX..X.\n.XX..",
    "K0\nX...X\nX..X.\nX.X..\nXX...\nX.X..\nX..X.\nX...X",
    "L0\nX....\nX....\nX....\nX....\nX....\nX....\nXXXXX",
    "M0\nX...X\nXX.XX\nX.X.X\nX.X.X\nX...X\nX...X\nX...X",
    "N0\nX...X\nXX..X\nX.X.X\nX..XX\nX...X\nX...X\nX...X",
    "O0\n.XXX.\nX...X\nX...X\nX...X\nX...X\nX...X\n.XXX.",
    "P0\nXXXX.\nX...X\nX...X\nXXXX.\nX....\nX....\nX....",
    "Q0\n.XXX.\nX...X\nX...X\nX...X\nX.X.X\nX..X.\n.XX.X",
    "R0\nXXXX.\nX...X\nX...X\nXXXX.\nX.X..\nX..X.\nX...X",
    "S0\n.XXXX\nX....\nX....\n.XXX.\n....X\n....X\nXXXX.",
    "T0\nXXXXX\n..X..\n..X..\n..X..\n..X..\n..X..\n..X..",
    "U0\nX...X\nX...X\nX...X\nX...X\nX...X\nX...X\n.XXX.",
    "V0\nX...X\nX...X\nX...X\nX...X\nX...X\n.X.X.\n..X..",
    "W0\nX...X\nX...X\nX...X\nX.X.X\nX.X.X\nXX.XX\nX...X",
    "X0\nX...X\nX...X\n.X.X.\n..X..\n.X.X.\nX...X\nX...X",
    "Y0\nX...X\nX...X\n.X.X.\n..X..\n..X..\n..X..\n..X..",
    "Z0\nXXXXX\n....X\n...X.\n..X..\n.X...\nX....\nXXXXX",
    "a2\n.XXX.\n....X\n.XXXX\nX...X\n.XXXX",
    "b0\nX....\nX....\nXXXX.\nX...X\nX...X\nX...X\nXXXX.",
    "c2\n.XXX.\nX....\nX....\nX....\n.XXX.",
    "d0\n....X\n....X\n.XXXX\nX...X\nX...X\nX...X\n.XXXX",
    "e2\n.XXX.\nX...X\nXXXXX\nX....\n.XXX.",
    "f0\n..XX.\n.X...\nXXXX.\n.X...\n.X...\n.X...\n.X...",
    "g2\n.XXXX\nX...X\nX...X\nX...X\n.XXXX\n....X\nX...X\n.XXX.",
    "h0\nX....\nX....\nXXXX.\nX...X\nX...X\nX...X\nX...X",
    "i0\n.....\n..X..\n.....\n.XX..\n..X..\n..X..\n.XXX.",
    "j0\n.....\n...X.\n.....\n..XX.\n...X.\n...X.\n...X.\n...X.\nX..X.\n.XX..",
    "k0\nX....\nX....\nX..X.\nX.X..\nXX...\nX.X..\nX..X.",
    "l0\n.XX..\n..X..\n..X..\n..X..\n..X..\n..X..\n.XXX.",
    "m2\nXX.X.\nX.X.X\nX.X.X\nX.X.X\nX.X.X",
    "n2\nXXXX.\nX...X\nX...X\nX...X\nX...X",
    "o2\n.XXX.\nX...X\nX...X\nX...X\n.XXX.",
    "p2\nXXXX.\nX...X\nX...X\nX...X\nXXXX.\nX....\nX....\nX....",
    "q2\n.XXXX\nX...X\nX...X\nX...X\n.XXXX\n....X\n....X\n....X",
    "r2\nX.XX.\nXX..X\nX....\nX....\nX....",
    "s2\n.XXXX\nX....\n.XXX.\n....X\nXXXX.",
    "t0\n.X...\n.X...\nXXXX.\n.X...\n.X...\n.X...\n..XX.",
    "u2\nX...X\nX...X\nX...X\nX...X\n.XXXX",
    "v2\nX...X\nX...X\nX...X\n.X.X.\n..X..",
    "w2\nX...X\nX.X.X\nX.X.X\nX.X.X\n.X.X.",
    "x2\nX...X\n.X.X.\n..X..\n.X.X.\nX...X",
    "y2\nX...X\nX...X\nX...X\n.X.X.\n..X..\n..X..\n.X...\nX....",
    "z2\nXXXXX\n...X.\n..X..\n.X...\nXXXXX",
    "00\n.XXX.\nX...X\nX..XX\nX.X.X\nXX..X\nX...X\n.XXX.",
    "10\n..X..\n.XX..\n..X..\n..X..\n..X..\n..X..\nXXXXX",
    "20\n.XXX.\nX...X\n....X\n...X.\n..X..\n.X...\nXXXXX",
    "30\nXXXX.\n....X\n....X\n.XXX.\n....X\n....X\nXXXX.",
    "40\n...X.\n..XX.\n.X.X.\nX..X.\nXXXXX\n...X.\n...X.",
    "50\nXXXXX\nX....\nXXXX.\n....X\n....X\nX...X\n.XXX.",
    "60\n.XXX.\nX....\nX....\nXXXX.\nX...X\nX...X\n.XXX.",
    "70\nXXXXX\n....X\n...X.\n..X..\n..X..\n.X...\n.X...",
    "80\n.XXX.\nX...X\nX...X\n.XXX.\nX...X\nX...X\n.XXX.",
    "90\n.XXX.\nX...X\nX...X\n.XXXX\n....X\n....X\n.XXX.",
    "!0\n..X..\n..X..\n..X..\n..X..\n..X..\n.....\n..X..",
    "\"0\n.X.X.\n.X.X.",
    "#1\n.X.X.\nXXXXX\n.X.X.\nXXXXX\n.X.X.",
    "$0\n..X..\n.XXXX\nX.X..\n.XXX.\n..X.X\nXXXX.\n..X..",
    "%0\nXX...\nXX..X\n...X.\n..X..\n.X...\nX..XX\n...XX",
    "&0\n.XX..\nX..X.\nX.X..\n.X...\nX.X.X\nX..X.\n.XX.X",
    "'0\n..X..\n..X..",
    "(0\n...X.\n..X..\n..X..\n..X..\n..X..\n..X..\n...X.",
    ")0\n.X...\n..X..\n..X..\n..X..\n..X..\n..X..\n.X...",
    "*1\n..X..\nX.X.X\n.XXX.\nX.X.X\n..X..",
    "+1\n..X..\n..X..\nXXXXX\n..X..\n..X..",
    ",5\n.....\n.XX..\n..X..\n.X...",
    "-4\nXXXXX",
    ".5\n.XX..\n.XX..",
    "/0\n....X\n...X.\n...X.\n..X..\n.X...\n.X...\nX....",
    ":2\n.XX..\n.XX..\n.....\n.XX..\n.XX..",
    ";2\n.XX..\n.XX..\n.....\n.XX..\n..X..\n.X...",
    "<0\n...X.\n..X..\n.X...\nX....\n.X...\n..X..\n...X.",
    "=2\n.....\nXXXXX\n.....\nXXXXX",
    ">0\n.X...\n..X..\n...X.\n....X\n...X.\n..X..\n.X...",
    "?0\n.XXX.\nX...X\n....X\n...X.\n..X..\n.....\n..X..",
    "@0\n.XXX.\nX...X\nX.XXX\nX.X.X\nX.XX.\nX....\n.XXXX",
    "[0\n..XXX\n..X..\n..X..\n..X..\n..X..\n..X..\n..XXX",
    "\\0\nX....\n.X...\n.X...\n..X..\n...X.\n...X.\n....X",
    "]0\nXXX..\n..X..\n..X..\n..X..\n..X..\n..X..\nXXX..",
    "^0\n..X..\n.X.X.\nX...X",
    "_9\nXXXXX",
    "`0\n.X...\n..X..",
    "{0\n...XX\n..X..\n..X..\n.XX..\n..X..\n..X..\n...XX",
    "|0\n..X..\n..X..\n..X..\n..X..\n..X..\n..X..\n..X..\n..X..\n..X..\n..X..",
    "}0\nXX...\n..X..\n..X..\n..XX.\n..X..\n..X..\nXX...",
    "~3\n.XX.X\nX..X.",
};

} // namespace fontdata

class BitmapFont {
public:
    static const BitmapFont& instance() {
        static BitmapFont font;
        return font;
    }

    /// Glyph for a codepoint, or nullptr when the font has none (space too).
    const Glyph* glyph(char32_t cp) const {
        auto it = glyphs_.find(cp);
        return it == glyphs_.end() ? nullptr : &it->second;
    }

    bool has(char32_t cp) const { return glyphs_.count(cp) != 0; }

private:
    BitmapFont() {
        for (const char* art : fontdata::kGlyphArt) {
            std::string_view s(art);
            char32_t ch = static_cast<unsigned char>(s[0]);
            int row = s[1] - '0';
            Glyph g;
            std::size_t pos = 3; // skip char, start row, first newline
            while (pos < s.size() && row < kFontRows) {
                std::uint8_t bits = 0;
                for (int c = 0; c < kFontCols && pos < s.size() && s[pos] != '\n'; ++c, ++pos) {
                    if (s[pos] == 'X') bits |= (1u << c);
                }
                g.rows[row++] = bits;
                if (pos < s.size() && s[pos] == '\n') ++pos;
            }
            glyphs_[ch] = g;
        }
    }

    std::map<char32_t, Glyph> glyphs_;
};

struct PixelClip {
    double x0, y0, x1, y1; // device px, half-open
};

/// Paints one glyph into the device box [x0,x1) x [y0,y1) covering the full
/// 5x10 cell (rows 0..9, descender included). Pixels sample the cell grid,
/// so any scale >= 1 reproduces the bitmap exactly.
inline void paint_glyph_box(RasterImage& img, const Glyph& glyph, double x0, double y0,
                            double x1, double y1, std::uint8_t r, std::uint8_t g,
                            std::uint8_t b, double alpha = 1.0,
                            const std::optional<PixelClip>& clip = std::nullopt) {
    if (alpha <= 0.0 || x1 <= x0 || y1 <= y0) return;
    double cx0 = x0, cy0 = y0, cx1 = x1, cy1 = y1;
    if (clip) {
        cx0 = std::max(cx0, clip->x0);
        cy0 = std::max(cy0, clip->y0);
        cx1 = std::min(cx1, clip->x1);
        cy1 = std::min(cy1, clip->y1);
    }
    int px0 = std::max(0, static_cast<int>(std::floor(cx0)));
    int py0 = std::max(0, static_cast<int>(std::floor(cy0)));
    int px1 = std::min(img.width, static_cast<int>(std::ceil(cx1)));
    int py1 = std::min(img.height, static_cast<int>(std::ceil(cy1)));
    const double w = x1 - x0, h = y1 - y0;
    for (int py = py0; py < py1; ++py) {
        double fy = (py + 0.5 - y0) / h * kFontRows;
        int row = static_cast<int>(fy);
        if (row < 0 || row >= kFontRows) continue;
        for (int px = px0; px < px1; ++px) {
            double fx = (px + 0.5 - x0) / w * kFontCols;
            int col = static_cast<int>(fx);
            if (col < 0 || col >= kFontCols) continue;
            if (!glyph.bit(col, row)) continue;
            if (clip && (px + 0.5 < clip->x0 || px + 0.5 >= clip->x1 || py + 0.5 < clip->y0 ||
                         py + 0.5 >= clip->y1))
                continue;
            img.blend(px, py, r, g, b, alpha);
        }
    }
}

/// Draws a UTF-8 line with the baseline at baseline_y. Unknown glyphs paint
/// as filled boxes. Returns the advance in device px.
inline double draw_text_line(RasterImage& img, std::string_view text, double x,
                             double baseline_y, double em_px, std::uint8_t r, std::uint8_t g,
                             std::uint8_t b, double alpha = 1.0,
                             const std::optional<PixelClip>& clip = std::nullopt) {
    const BitmapFont& font = BitmapFont::instance();
    const double cell_h = em_px;
    const double cell_w = em_px / kFontRows * kFontCols;
    const double advance = em_px * kFontAdvanceEm;
    const double top = baseline_y - em_px * kFontAscentEm;
    double pen = x;
    std::size_t pos = 0;
    while (pos < text.size()) {
        char32_t cp = utf8_next(text, pos);
        const Glyph* glyph = font.glyph(cp);
        if (glyph) {
            paint_glyph_box(img, *glyph, pen, top, pen + cell_w, top + cell_h, r, g, b, alpha,
                            clip);
        } else if (cp != ' ' && !cp_is_space(cp)) {
            Glyph box;
            for (int row = 1; row < kFontBaselineRow; ++row) box.rows[row] = 0x0E; // cols 1..3
            paint_glyph_box(img, box, pen, top, pen + cell_w, top + cell_h, r, g, b, alpha, clip);
        }
        pen += advance;
    }
    return pen - x;
}

} // namespace ghostlint
