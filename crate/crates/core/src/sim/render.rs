use crate::maze::Maze;
use crate::model::{Direction, Position};
use crate::sensing::in_searchlight;

const FOG: char = '░';

/// Box-drawing picture of a maze: `2*width+1` glyphs per line and
/// `height+2` lines. Each cell is a wall glyph (its west side) followed by a
/// content glyph: `H`, `M`, `*` when both share the cell, `_` for a south
/// wall inside the grid, else blank. With `fog_radius`, anything outside the
/// disc around the hero is drawn as `░`.
pub fn render_text(m: &Maze, hero: Option<Position>, monster: Option<Position>, fog_radius: Option<f64>) -> String {
    let (w, h) = (m.width() as usize, m.height() as usize);
    let lit = |p: Position| match (hero, fog_radius) {
        (Some(hp), Some(r)) => in_searchlight(hp, p, r),
        _ => true,
    };
    let (exit, side) = m.exit();

    let border = |left: char, right: char, row: u16, open: Direction| {
        let mut line = String::with_capacity(3 * (2 * w + 1));
        line.push(left);
        for c in 0..w as u16 {
            let p = Position::new(c, row);
            line.push(if !lit(p) {
                FOG
            } else if (p, open) == (exit, side) {
                ' '
            } else {
                '─'
            });
            line.push(if c as usize + 1 == w { right } else { '─' });
        }
        line
    };

    let mut out = border('┌', '┐', 0, Direction::North);
    out.push('\n');
    for r in 0..h as u16 {
        for c in 0..w as u16 {
            let p = Position::new(c, r);
            let west_lit = lit(p) || (c > 0 && lit(Position::new(c - 1, r)));
            out.push(if !west_lit {
                FOG
            } else if m.has_wall(p, Direction::West) {
                '│'
            } else {
                ' '
            });
            out.push(if !lit(p) {
                FOG
            } else {
                match (Some(p) == hero, Some(p) == monster) {
                    (true, true) => '*',
                    (true, false) => 'H',
                    (false, true) => 'M',
                    _ if (r as usize) + 1 < h && m.has_wall(p, Direction::South) => '_',
                    _ => ' ',
                }
            });
        }
        let last = Position::new(w as u16 - 1, r);
        out.push(if !lit(last) {
            FOG
        } else if m.has_wall(last, Direction::East) {
            '│'
        } else {
            ' '
        });
        out.push('\n');
    }
    out.push_str(&border('└', '┘', h as u16 - 1, Direction::South));
    out.push('\n');
    out
}
