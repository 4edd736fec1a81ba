//! Text forms of maps: `table 1 2 0`, `scale 1/2`, `piecewise { m } b { m }`.

use crate::maps::{RealMap, TableMap};

use super::document::{fmt_number, parse_index, parse_number};
use super::ScenarioError;

#[derive(Debug, Clone, PartialEq)]
pub enum MapSpec {
    Table(TableMap),
    Real(RealMap),
}

impl MapSpec {
    pub fn to_text(&self) -> String {
        match self {
            MapSpec::Table(t) => {
                let mut s = String::from("table");
                for v in &t.0 {
                    s.push(' ');
                    s.push_str(&v.to_string());
                }
                s
            }
            MapSpec::Real(m) => real_map_text(m),
        }
    }
}

pub fn real_map_text(m: &RealMap) -> String {
    match m {
        RealMap::Affine { a, b } => format!("affine {} {}", fmt_number(*a), fmt_number(*b)),
        RealMap::Scale(c) => format!("scale {}", fmt_number(*c)),
        RealMap::LogForm(c) => format!("log-form {}", fmt_number(*c)),
        RealMap::Piecewise { breaks, pieces } => {
            let mut s = format!("piecewise {{ {} }}", real_map_text(&pieces[0]));
            for (b, p) in breaks.iter().zip(&pieces[1..]) {
                s.push_str(&format!(" {} {{ {} }}", fmt_number(*b), real_map_text(p)));
            }
            s
        }
        other => other.to_string(),
    }
}

pub fn parse_map(text: &str, line: usize) -> Result<MapSpec, ScenarioError> {
    let tokens = tokenize(text);
    if tokens.first().map(String::as_str) == Some("table") {
        let values = tokens[1..].iter().map(|t| parse_index(t, line)).collect::<Result<_, _>>()?;
        return Ok(MapSpec::Table(TableMap(values)));
    }
    let mut pos = 0;
    let map = parse_real(&tokens, &mut pos, line)?;
    if pos != tokens.len() {
        return Err(ScenarioError::parse(line, format!("unexpected '{}' after map", tokens[pos])));
    }
    Ok(MapSpec::Real(map))
}

fn tokenize(text: &str) -> Vec<String> {
    text.replace('{', " { ").replace('}', " } ").split_whitespace().map(str::to_string).collect()
}

fn parse_real(tokens: &[String], pos: &mut usize, line: usize) -> Result<RealMap, ScenarioError> {
    let name = next(tokens, pos, line, "a map name")?;
    let mut num = |what: &str| -> Result<f64, ScenarioError> { parse_number(next(tokens, pos, line, what)?, line) };
    Ok(match name {
        "affine" => RealMap::Affine { a: num("slope")?, b: num("intercept")? },
        "scale" => RealMap::Scale(num("factor")?),
        "log-form" => match num("scale")? {
            c if c != 0.0 => RealMap::LogForm(c),
            _ => return Err(ScenarioError::parse(line, "log-form scale must be nonzero")),
        },
        "identity" => RealMap::identity(),
        "reciprocal" => RealMap::Reciprocal,
        "exp-decay" => RealMap::ExpDecay,
        "exp" => RealMap::Exp,
        "square" => RealMap::Square,
        "sqrt" => RealMap::Sqrt,
        "neg-log" => RealMap::NegLog,
        "piecewise" => {
            let mut pieces = vec![braced(tokens, pos, line)?];
            let mut breaks = Vec::new();
            while *pos < tokens.len() && tokens[*pos] != "}" {
                let b = parse_number(next(tokens, pos, line, "a breakpoint")?, line)?;
                if breaks.last().is_some_and(|&last| b <= last) {
                    return Err(ScenarioError::parse(line, "piecewise breakpoints must increase"));
                }
                breaks.push(b);
                pieces.push(braced(tokens, pos, line)?);
            }
            RealMap::Piecewise { breaks, pieces }
        }
        other => return Err(ScenarioError::parse(line, format!("unknown map '{other}'"))),
    })
}

fn braced(tokens: &[String], pos: &mut usize, line: usize) -> Result<RealMap, ScenarioError> {
    if next(tokens, pos, line, "'{'")? != "{" {
        return Err(ScenarioError::parse(line, "expected '{' before a piece"));
    }
    let inner = parse_real(tokens, pos, line)?;
    if next(tokens, pos, line, "'}'")? != "}" {
        return Err(ScenarioError::parse(line, "expected '}' after a piece"));
    }
    Ok(inner)
}

fn next<'a>(tokens: &'a [String], pos: &mut usize, line: usize, what: &str) -> Result<&'a str, ScenarioError> {
    let t = tokens.get(*pos).ok_or_else(|| ScenarioError::parse(line, format!("expected {what}")))?;
    *pos += 1;
    Ok(t)
}
