//! Group order of a permutation group by the Schreier–Sims algorithm.
//!
//! Used to size automorphism groups too large to close element by element.

type Perm = Vec<u32>;

fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

/// `a` then `b`.
fn mul(a: &Perm, b: &Perm) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

fn inverse(a: &Perm) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

fn is_identity(a: &Perm) -> bool {
    a.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

struct Level {
    base: u32,
    /// `transversal[x]` maps `base` to `x`.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<u32>,
}

struct Chain {
    degree: usize,
    levels: Vec<Level>,
    /// Strong generators, each tagged with the first level it does not fix.
    gens: Vec<(Perm, usize)>,
}

impl Chain {
    fn level_gens(&self, i: usize) -> Vec<&Perm> {
        self.gens
            .iter()
            .filter(|(_, lvl)| *lvl >= i)
            .map(|(g, _)| g)
            .collect()
    }

    fn rebuild(&mut self, i: usize) {
        let gens: Vec<Perm> = self.level_gens(i).into_iter().cloned().collect();
        let level = &mut self.levels[i];
        let mut transversal = vec![None; self.degree];
        transversal[level.base as usize] = Some(identity(self.degree));
        let mut orbit = vec![level.base];
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            let ux = transversal[x as usize].clone().expect("orbit point");
            for g in &gens {
                let y = g[x as usize];
                if transversal[y as usize].is_none() {
                    transversal[y as usize] = Some(mul(&ux, g));
                    orbit.push(y);
                }
            }
            k += 1;
        }
        level.transversal = transversal;
        level.orbit = orbit;
    }

    /// Sifts `g` from level `start`; returns the residue and the level where it stopped.
    fn strip(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for i in start..self.levels.len() {
            let beta = g[self.levels[i].base as usize];
            match &self.levels[i].transversal[beta as usize] {
                None => return (g, i),
                Some(u) => g = mul(&g, &inverse(u)),
            }
        }
        (g, self.levels.len())
    }

    fn add_base_point_for(&mut self, g: &Perm) {
        let b = g
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
            .expect("non-identity permutation moves a point");
        self.levels.push(Level {
            base: b,
            transversal: Vec::new(),
            orbit: Vec::new(),
        });
    }

    /// First level whose base point `g` moves.
    fn first_moved(&self, g: &Perm) -> Option<usize> {
        self.levels
            .iter()
            .position(|l| g[l.base as usize] != l.base)
    }
}

/// Order of the group generated by `gens`, permutations of `0..degree`.
pub fn group_order(gens: &[Vec<u32>], degree: usize) -> u128 {
    let mut chain = Chain {
        degree,
        levels: Vec::new(),
        gens: Vec::new(),
    };
    for g in gens.iter().filter(|g| !is_identity(g)) {
        if chain.first_moved(g).is_none() {
            chain.add_base_point_for(g);
        }
        let lvl = chain.first_moved(g).expect("base point just added");
        chain.gens.push((g.clone(), lvl));
    }
    for i in 0..chain.levels.len() {
        chain.rebuild(i);
    }
    let mut i = chain.levels.len();
    while i > 0 {
        let lvl = i - 1;
        let mut restart = None;
        'schreier: for x in chain.levels[lvl].orbit.clone() {
            let ux = chain.levels[lvl].transversal[x as usize]
                .clone()
                .expect("orbit point");
            for s in chain
                .level_gens(lvl)
                .into_iter()
                .cloned()
                .collect::<Vec<_>>()
            {
                let y = s[x as usize];
                let uy = chain.levels[lvl].transversal[y as usize]
                    .clone()
                    .expect("orbit closed");
                let h = mul(&mul(&ux, &s), &inverse(&uy));
                let (res, j) = chain.strip(h, lvl + 1);
                if j < chain.levels.len() || !is_identity(&res) {
                    if j == chain.levels.len() {
                        chain.add_base_point_for(&res);
                    }
                    let tag = chain.first_moved(&res).expect("residue moves a base point");
                    chain.gens.push((res, tag));
                    for l in lvl + 1..=j.min(chain.levels.len() - 1) {
                        chain.rebuild(l);
                    }
                    restart = Some(j + 1);
                    break 'schreier;
                }
            }
        }
        match restart {
            Some(next) => i = next,
            None => i -= 1,
        }
    }
    chain.levels.iter().map(|l| l.orbit.len() as u128).product()
}
