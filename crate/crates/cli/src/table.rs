/// Left-aligned plain-text table; an empty header omits the header line.
pub fn render(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = rows
        .iter()
        .map(Vec::len)
        .chain([header.len()])
        .max()
        .unwrap_or(0);
    let mut widths = vec![0; cols];
    for (i, h) in header.iter().enumerate() {
        widths[i] = widths[i].max(h.chars().count());
    }
    for row in rows {
        for (i, c) in row.iter().enumerate() {
            widths[i] = widths[i].max(c.chars().count());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let mut s = String::new();
        for (i, c) in cells.enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            s.push_str(c);
            s.extend(std::iter::repeat_n(' ', widths[i] - c.chars().count()));
        }
        let mut s = s.trim_end().to_string();
        s.push('\n');
        s
    };
    let mut out = String::new();
    if !header.is_empty() {
        out += &line(&mut header.iter().copied());
    }
    for row in rows {
        out += &line(&mut row.iter().map(String::as_str));
    }
    out
}
