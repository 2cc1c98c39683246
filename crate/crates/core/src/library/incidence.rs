//! Incidences between lines and their multiple points, and the
//! de Bruijn-Erdos inequality `r >= s`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `s` lines and `r` points; `incidence[line][point]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceStructure {
    pub lines: usize,
    pub points: usize,
    pub incidence: Vec<Vec<bool>>,
}

impl IncidenceStructure {
    /// Builds the structure from the list of points on each line.
    pub fn from_lines(points: usize, lines: &[Vec<usize>]) -> Result<Self> {
        let mut incidence = vec![vec![false; points]; lines.len()];
        for (l, pts) in lines.iter().enumerate() {
            for &p in pts {
                if p >= points {
                    return Err(Error::MalformedIncidence(format!(
                        "line {l} lists point {p}, but there are only {points}"
                    )));
                }
                incidence[l][p] = true;
            }
        }
        let s = IncidenceStructure {
            lines: lines.len(),
            points,
            incidence,
        };
        s.check()?;
        Ok(s)
    }

    pub fn check(&self) -> Result<()> {
        if self.incidence.len() != self.lines || self.incidence.iter().any(|row| row.len() != self.points) {
            return Err(Error::MalformedIncidence("matrix shape does not match counts".into()));
        }
        for p in 0..self.points {
            let on = self.lines_through(p);
            if on < 2 {
                return Err(Error::MalformedIncidence(format!("point {p} lies on {on} line(s)")));
            }
        }
        for a in 0..self.lines {
            for b in a + 1..self.lines {
                let common = (0..self.points)
                    .filter(|&p| self.incidence[a][p] && self.incidence[b][p])
                    .count();
                if common > 1 {
                    return Err(Error::MalformedIncidence(format!(
                        "lines {a} and {b} share {common} points"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn lines_through(&self, point: usize) -> usize {
        (0..self.lines).filter(|&l| self.incidence[l][point]).count()
    }

    /// `s` lines in general position: one point per pair.
    pub fn generic(s: usize) -> Self {
        let mut lines = vec![Vec::new(); s];
        let mut next = 0;
        for a in 0..s {
            for b in a + 1..s {
                lines[a].push(next);
                lines[b].push(next);
                next += 1;
            }
        }
        Self::from_lines(next, &lines).expect("generic lines are well formed")
    }

    /// The Fano plane.
    pub fn fano() -> Self {
        let lines = [
            vec![0, 1, 2],
            vec![0, 3, 4],
            vec![0, 5, 6],
            vec![1, 3, 5],
            vec![1, 4, 6],
            vec![2, 3, 6],
            vec![2, 4, 5],
        ];
        Self::from_lines(7, &lines).expect("the Fano plane is well formed")
    }

    /// `s - 1` lines through one point and one more line crossing them.
    pub fn near_pencil(s: usize) -> Self {
        assert!(s >= 3);
        // point 0 is the center, point i lies on line i - 1 and the last line
        let mut lines: Vec<Vec<usize>> = (1..s).map(|i| vec![0, i]).collect();
        lines.push((1..s).collect());
        Self::from_lines(s, &lines).expect("a near-pencil is well formed")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EqualityCase {
    NearPencil,
    FiniteProjectivePlane,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeBruijnErdos {
    pub r: usize,
    pub s: usize,
    pub r_ge_s: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equality: Option<EqualityCase>,
}

pub fn de_bruijn_erdos(inc: &IncidenceStructure) -> Result<DeBruijnErdos> {
    inc.check()?;
    let (r, s) = (inc.points, inc.lines);
    let equality = (r == s).then(|| {
        let all_meet = (0..s).all(|a| {
            (a + 1..s).all(|b| (0..r).any(|p| inc.incidence[a][p] && inc.incidence[b][p]))
        });
        if (0..r).any(|p| inc.lines_through(p) + 1 == s) {
            EqualityCase::NearPencil
        } else if all_meet && (0..r).all(|p| inc.lines_through(p) >= 3) {
            EqualityCase::FiniteProjectivePlane
        } else {
            EqualityCase::Other
        }
    });
    Ok(DeBruijnErdos {
        r,
        s,
        r_ge_s: r >= s,
        equality,
    })
}
