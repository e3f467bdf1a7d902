use super::{Lts, LtsError, StateId};

/// Structural properties of a finite system.
///
/// `diamond` and `confluent` are only defined when the alphabet has at most
/// one label, and are `None` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub deterministic: bool,
    pub image_finite: bool,
    pub diamond: Option<bool>,
    pub confluent: Option<bool>,
}

pub fn classify(lts: &Lts) -> Classification {
    let deterministic = (0..lts.n_states()).all(|s| {
        let succ = lts.successors(s);
        succ.windows(2).all(|w| w[0].0 != w[1].0)
    });
    Classification {
        deterministic,
        image_finite: true,
        diamond: is_diamond(lts).ok(),
        confluent: is_confluent(lts).ok(),
    }
}

fn require_reduction_system(lts: &Lts) -> Result<(), LtsError> {
    match lts.alphabet().len() {
        0 | 1 => Ok(()),
        n => Err(LtsError::NotReductionSystem(n)),
    }
}

/// `∀ a→b, a→c. ∃ d. b→d ∧ c→d`.
pub fn is_diamond(lts: &Lts) -> Result<bool, LtsError> {
    require_reduction_system(lts)?;
    let step: Vec<Vec<bool>> = (0..lts.n_states())
        .map(|s| {
            let mut row = vec![false; lts.n_states()];
            for &(_, t) in lts.successors(s) {
                row[t] = true;
            }
            row
        })
        .collect();
    Ok(joinable_everywhere(lts, &step, |a| lts.successors(a).iter().map(|&(_, t)| t).collect()))
}

/// The diamond property of the reflexive-transitive closure.
pub fn is_confluent(lts: &Lts) -> Result<bool, LtsError> {
    require_reduction_system(lts)?;
    let star: Vec<Vec<bool>> = (0..lts.n_states())
        .map(|s| {
            let mut row = vec![false; lts.n_states()];
            for t in lts.reachable(s).expect("state in range") {
                row[t] = true;
            }
            row
        })
        .collect();
    Ok(joinable_everywhere(lts, &star, |a| {
        star[a].iter().enumerate().filter_map(|(t, &r)| r.then_some(t)).collect()
    }))
}

/// For every `a` and every pair `b, c` in `peaks(a)`, some `d` has `rel[b][d]`
/// and `rel[c][d]`.
fn joinable_everywhere(
    lts: &Lts,
    rel: &[Vec<bool>],
    peaks: impl Fn(StateId) -> Vec<StateId>,
) -> bool {
    (0..lts.n_states()).all(|a| {
        let tops = peaks(a);
        tops.iter().all(|&b| {
            tops.iter()
                .all(|&c| (0..lts.n_states()).any(|d| rel[b][d] && rel[c][d]))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_system_is_everything() {
        let lts = Lts::new(3, [], []).unwrap();
        let c = classify(&lts);
        assert_eq!(
            c,
            Classification {
                deterministic: true,
                image_finite: true,
                diamond: Some(true),
                confluent: Some(true)
            }
        );
    }

    #[test]
    fn unjoinable_fork() {
        let lts = Lts::from_triples(3, &[(0, "step", 1), (0, "step", 2)]).unwrap();
        let c = classify(&lts);
        assert!(!c.deterministic);
        assert_eq!(c.diamond, Some(false));
        assert_eq!(c.confluent, Some(false));
    }

    #[test]
    fn joined_fork_is_a_diamond() {
        let lts = Lts::from_triples(
            4,
            &[(0, "s", 1), (0, "s", 2), (1, "s", 3), (2, "s", 3), (3, "s", 3)],
        )
        .unwrap();
        assert_eq!(is_diamond(&lts), Ok(true));
        assert_eq!(is_confluent(&lts), Ok(true));
    }

    #[test]
    fn confluent_but_not_diamond() {
        // 0→1→2 and 0→2: the one-step peak (1, 2) only joins after two steps of 1.
        let lts = Lts::from_triples(3, &[(0, "s", 1), (1, "s", 2), (0, "s", 2)]).unwrap();
        assert_eq!(is_diamond(&lts), Ok(false));
        assert_eq!(is_confluent(&lts), Ok(true));
    }

    #[test]
    fn multi_label_alphabet_rejected() {
        let lts = Lts::from_triples(2, &[(0, "a", 1), (0, "b", 1)]).unwrap();
        assert_eq!(is_diamond(&lts), Err(LtsError::NotReductionSystem(2)));
        assert_eq!(classify(&lts).confluent, None);
        assert!(classify(&lts).deterministic);
    }
}
