//! Coset enumeration over ⟨σ, ρ | σ², ρ³⟩ (HLT strategy with coincidence handling).

use crate::error::{Error, Result};
use crate::moebius::Gen;

const NONE: u32 = u32::MAX;
// columns: σ, ρ, ρ⁻¹
const INV: [usize; 3] = [0, 2, 1];

struct Enumerator {
    table: Vec<[u32; 3]>,
    parent: Vec<u32>,
    live: usize,
    limit: usize,
}

impl Enumerator {
    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<()> {
        if self.table.len() >= self.limit {
            return Err(Error::EnumerationLimit(self.limit));
        }
        let d = self.table.len() as u32;
        self.table.push([NONE; 3]);
        self.parent.push(d);
        self.live += 1;
        self.table[c as usize][x] = d;
        self.table[d as usize][INV[x]] = c;
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = (a.min(b), a.max(b));
        self.parent[kill as usize] = keep;
        self.live -= 1;
        queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..3 {
                let f = self.table[e as usize][x];
                if f == NONE {
                    continue;
                }
                self.table[f as usize][INV[x]] = NONE;
                let (e1, f1) = (self.rep(e), self.rep(f));
                let ex = self.table[e1 as usize][x];
                let fx = self.table[f1 as usize][INV[x]];
                if ex != NONE {
                    self.merge(f1, ex, &mut queue);
                } else if fx != NONE {
                    self.merge(e1, fx, &mut queue);
                } else {
                    self.table[e1 as usize][x] = f1;
                    self.table[f1 as usize][INV[x]] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: u32, word: &[usize]) -> Result<()> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0, word.len());
        loop {
            while i < j && self.table[f as usize][word[i]] != NONE {
                f = self.table[f as usize][word[i]];
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i && self.table[b as usize][INV[word[j - 1]]] != NONE {
                b = self.table[b as usize][INV[word[j - 1]]];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.table[f as usize][word[i]] = b;
                self.table[b as usize][INV[word[i]]] = f;
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }
}

fn column(g: Gen) -> usize {
    match g {
        Gen::S => 0,
        Gen::R => 1,
        Gen::R2 => 2,
    }
}

/// Returns the σ and ρ permutation tables (coset 0 = the subgroup) of the
/// subgroup generated by the given words.
pub(super) fn enumerate(gens: &[Vec<Gen>], max_cosets: usize) -> Result<(Vec<u32>, Vec<u32>)> {
    let mut e = Enumerator { table: vec![[NONE; 3]], parent: vec![0], live: 1, limit: max_cosets.max(1) };
    let relators: [Vec<usize>; 2] = [vec![0, 0], vec![1, 1, 1]];
    for w in gens {
        let w: Vec<usize> = w.iter().map(|&g| column(g)).collect();
        if !w.is_empty() {
            e.scan_and_fill(0, &w)?;
        }
    }
    let mut c = 0u32;
    while (c as usize) < e.table.len() {
        for r in &relators {
            if !e.alive(c) {
                break;
            }
            e.scan_and_fill(c, r)?;
        }
        if e.alive(c) {
            for x in 0..3 {
                if e.table[c as usize][x] == NONE {
                    e.define(c, x)?;
                }
            }
        }
        c += 1;
    }
    // generators may have been scanned before later coincidences; rescan once
    for w in gens {
        let w: Vec<usize> = w.iter().map(|&g| column(g)).collect();
        e.scan_and_fill(0, &w)?;
    }
    let live: Vec<u32> = (0..e.table.len() as u32).filter(|&c| e.alive(c)).collect();
    let mut label = vec![NONE; e.table.len()];
    for (i, &c) in live.iter().enumerate() {
        label[c as usize] = i as u32;
    }
    let mut sigma = Vec::with_capacity(live.len());
    let mut rho = Vec::with_capacity(live.len());
    for &c in &live {
        let row = e.table[c as usize];
        if row.contains(&NONE) {
            return Err(Error::Internal("incomplete coset table".into()));
        }
        sigma.push(label[e.rep(row[0]) as usize]);
        rho.push(label[e.rep(row[1]) as usize]);
    }
    Ok((sigma, rho))
}
