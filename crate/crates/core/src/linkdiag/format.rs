use std::fmt;

use super::{BraidWord, FramedLink, LinkError, Result};

/// Reads the line-oriented link format:
///
/// ```text
/// # Hopf link with framings 2 and 0
/// braid 3: 2 3 3
/// dotted:
/// offsets: 1 0
/// ```
///
/// Components are numbered by their lowest strand; `dotted` lists 0-based
/// component indices. Both `dotted` and `offsets` may be omitted.
pub fn parse_link(text: &str) -> Result<FramedLink> {
    let mut braid = None;
    let mut dotted: Option<(usize, Vec<usize>)> = None;
    let mut offsets: Option<(usize, Vec<i64>)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| LinkError::Parse { line: line_no, msg };
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| err("expected `key: values`".into()))?;
        let key = key.trim();
        if let Some(s) = key.strip_prefix("braid") {
            if braid.is_some() {
                return Err(err("duplicate braid line".into()));
            }
            let strands: usize = s
                .trim()
                .parse()
                .map_err(|_| err(format!("bad strand count `{}`", s.trim())))?;
            let letters = ints::<i32>(rest).map_err(err)?;
            braid = Some(BraidWord::new(strands, letters).map_err(|e| err(e.to_string()))?);
        } else if key == "dotted" {
            dotted = Some((line_no, ints::<usize>(rest).map_err(err)?));
        } else if key == "offsets" {
            offsets = Some((line_no, ints::<i64>(rest).map_err(err)?));
        } else {
            return Err(err(format!("unknown key `{key}`")));
        }
    }
    let braid = braid.ok_or(LinkError::Parse {
        line: 0,
        msg: "missing braid line".into(),
    })?;
    let closure = FramedLink::closure(braid);
    let c = closure.num_components();
    let mut flags = vec![false; c];
    if let Some((line, list)) = dotted {
        for i in list {
            if i >= c {
                return Err(LinkError::Parse {
                    line,
                    msg: format!("no component {i}"),
                });
            }
            flags[i] = true;
        }
    }
    let offs = match offsets {
        Some((line, v)) if v.len() != c => {
            return Err(LinkError::Parse {
                line,
                msg: format!("expected {c} offsets, got {}", v.len()),
            });
        }
        Some((_, v)) => v,
        None => vec![0; c],
    };
    FramedLink::new(closure.braid().clone(), flags, offs)
}

fn ints<T: std::str::FromStr>(s: &str) -> std::result::Result<Vec<T>, String> {
    s.split_whitespace()
        .map(|t| {
            t.trim_start_matches('+')
                .parse()
                .map_err(|_| format!("bad integer `{t}`"))
        })
        .collect()
}

impl fmt::Display for FramedLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: Vec<String>| v.join(" ");
        writeln!(
            f,
            "braid {}: {}",
            self.braid.strands(),
            join(self.braid.letters().iter().map(i32::to_string).collect())
        )?;
        let dotted = (0..self.num_components())
            .filter(|&c| self.dotted[c])
            .map(|c| c.to_string())
            .collect();
        writeln!(f, "dotted: {}", join(dotted))?;
        writeln!(
            f,
            "offsets: {}",
            join(self.offsets.iter().map(i64::to_string).collect())
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# hopf\nbraid 3: 2 3 3\ndotted: 1\noffsets: 1 0\n";
        let l = parse_link(text).unwrap();
        assert_eq!(l.num_components(), 2);
        assert_eq!(l.dotted(), &[false, true]);
        assert_eq!(l.to_string(), "braid 3: 2 3 3\ndotted: 1\noffsets: 1 0\n");
        assert_eq!(parse_link(&l.to_string()).unwrap(), l);
    }

    #[test]
    fn defaults_and_errors() {
        let l = parse_link("braid 2: -2 -2").unwrap();
        assert_eq!(l.offsets(), &[0, 0]);
        assert!(matches!(
            parse_link("braid 2: 3"),
            Err(LinkError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_link("braid 2: 2 2\noffsets: 1"),
            Err(LinkError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_link("braid 1:\ndotted: 1"),
            Err(LinkError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_link("offsets: 1"),
            Err(LinkError::Parse { line: 0, .. })
        ));
        assert!(matches!(
            parse_link("colour: 1\nbraid 1:"),
            Err(LinkError::Parse { line: 1, .. })
        ));
    }
}
