//! Enumeration of all subgroups of a given index by backtracking over
//! partial coset tables in canonical order.

use super::Subgroup;

const NONE: u32 = u32::MAX;

struct Partial {
    n: usize,
    torsion_free: bool,
    used: usize,
    sigma: Vec<u32>,
    rho: Vec<u32>,
    rho_inv: Vec<u32>,
}

impl Partial {
    fn set_rho(&mut self, a: u32, b: u32, trail: &mut Vec<(u32, u32)>) -> bool {
        let (ra, ib) = (self.rho[a as usize], self.rho_inv[b as usize]);
        if ra == b {
            return true;
        }
        if ra != NONE || ib != NONE {
            return false;
        }
        if self.torsion_free && a == b {
            return false;
        }
        self.rho[a as usize] = b;
        self.rho_inv[b as usize] = a;
        trail.push((a, b));
        // ρ³ = 1: a → b → c must close with c → a, and no 2-cycles
        let c = self.rho[b as usize];
        if c != NONE {
            if c == a {
                return a == b;
            }
            if !self.set_rho(c, a, trail) {
                return false;
            }
        }
        let z = self.rho_inv[a as usize];
        if z != NONE && z != b {
            if z == a {
                return false;
            }
            if !self.set_rho(b, z, trail) {
                return false;
            }
        }
        true
    }

    fn undo_rho(&mut self, trail: &[(u32, u32)]) {
        for &(a, b) in trail.iter().rev() {
            self.rho[a as usize] = NONE;
            self.rho_inv[b as usize] = NONE;
        }
    }

    fn first_undefined(&self) -> Option<(u32, bool)> {
        (0..self.used).find_map(|c| {
            if self.sigma[c] == NONE {
                Some((c as u32, true))
            } else if self.rho[c] == NONE {
                Some((c as u32, false))
            } else {
                None
            }
        })
    }

    fn search(&mut self, out: &mut Vec<Subgroup>) {
        let Some((c, is_sigma)) = self.first_undefined() else {
            if self.used == self.n {
                let sub =
                    Subgroup::from_tables(self.sigma.clone(), self.rho.clone()).expect("complete consistent table");
                out.push(sub);
            }
            return;
        };
        let fresh = self.used as u32;
        let candidates: Vec<u32> = (0..self.used as u32).chain((self.used < self.n).then_some(fresh)).collect();
        for d in candidates {
            let grew = d == fresh;
            if grew {
                self.used += 1;
            }
            if is_sigma {
                if self.sigma[d as usize] == NONE && !(self.torsion_free && d == c) {
                    self.sigma[c as usize] = d;
                    self.sigma[d as usize] = c;
                    self.search(out);
                    self.sigma[c as usize] = NONE;
                    self.sigma[d as usize] = NONE;
                }
            } else {
                let mut trail = Vec::new();
                if self.set_rho(c, d, &mut trail) {
                    self.search(out);
                }
                self.undo_rho(&trail);
            }
            if grew {
                self.used -= 1;
            }
        }
    }
}

/// All subgroups of PSL(2,Z) of exactly the given index, optionally only the
/// torsion-free ones, in canonical-table order.
pub fn low_index_subgroups(index: usize, torsion_free: bool) -> Vec<Subgroup> {
    if index == 0 {
        return Vec::new();
    }
    let mut p = Partial {
        n: index,
        torsion_free,
        used: 1,
        sigma: vec![NONE; index],
        rho: vec![NONE; index],
        rho_inv: vec![NONE; index],
    };
    let mut out = Vec::new();
    p.search(&mut out);
    out
}
