from fractions import Fraction
from typing import Dict, List, Optional

from cmpl.biq.structures import SplitBiQ, SubspacePresentation, count_biq_subspaces, is_biq_subspace, \
    isotypic_blocks, period_of_line, subspace_dimension
from cmpl.cm.fields import CMType, is_cm_field
from cmpl.cm.lattice import CMData, RelationLattice, quadratic_analysis, quasi_period_analysis, relation_lattice
from cmpl.cm.weyl import galois_order, scan_weyl_quartics, weyl_check, weyl_order
from cmpl.core.errors import InputError
from cmpl.core.model import Outcome, StatusType
from cmpl.core.worker import Worker
from cmpl.exact.fields import NumberField
from cmpl.numeric.harness import QUADRATIC, QUASI, hasc_falsify, legendre_check
from cmpl.numeric.periods import cm_theta
from cmpl.numeric.verify import verify_beta_diag_g1, verify_siegel_g1
from cmpl.shimura.roots import RootDatumGSp
from cmpl.shimura.special import special_subvarieties_weyl
from cmpl.shimura.tangent import hilbert_restriction_check, hilbert_tangent_biq, kodaira_spencer_check, \
    rootspace_analysis, siegel_tangent_biq


def _cm_data(types: List[Dict]) -> CMData:
    if not isinstance(types, list) or len(types) == 0:
        raise InputError('Expected a non-empty list of CM types')
    return CMData([CMType.from_dict(t) for t in types])


def _relations(g: int, types: Optional[List[Dict]], relations: Optional[Dict]) -> Optional[RelationLattice]:
    if relations is not None:
        return RelationLattice.from_dict(relations)
    if types is not None:
        data = _cm_data(types)
        if data.g != g:
            raise InputError(f'CM data of dimension {data.g} used for g={g}')
        return relation_lattice(data)
    return None


def _subspace(S: SplitBiQ, raw: Dict) -> SubspacePresentation:
    """Spanning vectors with rational entries, or coordinate lists of elements of raw['field']"""
    try:
        if 'field' in raw:
            K = NumberField(raw['field'])
            basis = [[K.element([Fraction(str(c)) for c in entry]) for entry in v] for v in raw['basis']]
        else:
            basis = [[Fraction(str(c)) for c in v] for v in raw['basis']]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as ex:
        raise InputError(f'Invalid subspace {raw}: {ex}')
    return SubspacePresentation(S, basis)


class PeriodWorker(Worker):

    def compute(self, command: str, **kwargs) -> Outcome:
        computations = {
            'relations': self.relations,
            'biq': self.biq,
            'siegel': self.siegel,
            'hilbert': self.hilbert,
            'weyl': self.weyl,
            'verify siegel-g1': self.verify_siegel_g1,
            'verify beta-diag': self.verify_beta_diag,
            'verify falsify': self.verify_falsify,
            'verify quasi': self.verify_quasi,
            'verify legendre': self.verify_legendre,
        }
        if command not in computations:
            raise InputError(f'Unknown command {command}')
        return computations[command](**kwargs)

    def relations(self, types: List[Dict]) -> Outcome:
        data = _cm_data(types)
        R = relation_lattice(data)
        self.logger.debug(f'{data}: {R}')
        return Outcome(StatusType.SUCCESS, {
            'cm_data': data.as_dict(),
            'galois_orbit': data.galois_orbit().as_json(),
            'mt_dim': R.mt_dim,
            'maximal_torus': R.mt_dim == data.g + 1,
            'relation_lattice': R.as_dict(),
            'monomials': [m.symbolic() for m in R.monomials()],
            'quadratic': quadratic_analysis(data, R).as_dict(),
            'quasi_periods': quasi_period_analysis(data, R).as_dict()
        })

    def biq(self, action: str, structure: Dict, relations: Optional[Dict] = None,
            subspace: Optional[Dict] = None) -> Outcome:
        S = SplitBiQ.from_dict(structure)
        R = RelationLattice.from_dict(relations) if relations is not None else None
        payload = {'structure': [str(label) for label in S.labels], 'action': action}
        if action == 'decompose':
            payload['blocks'] = [{'lines': block, 'period': str(label)} for block, label in isotypic_blocks(S, R)]
        elif action == 'count':
            payload['count'] = count_biq_subspaces(S, R)
        elif action == 'test':
            if subspace is None:
                raise InputError('Action test requires a subspace')
            V = _subspace(S, subspace)
            payload['dim'] = subspace_dimension(V)
            payload['biq'] = is_biq_subspace(V, R)
            if V.dim == 1 and payload['biq']:
                payload['period'] = str(period_of_line(V, R))
        else:
            raise InputError(f'Unknown bi-Qbar action {action}')
        return Outcome(StatusType.SUCCESS, payload)

    def siegel(self, g: int, types: Optional[List[Dict]] = None, relations: Optional[Dict] = None) -> Outcome:
        S = siegel_tangent_biq(g)
        R = _relations(g, types, relations)
        return Outcome(StatusType.SUCCESS, {
            'g': g,
            'labels': [str(label) for label in S.labels],
            'symbolic': [label.symbolic() for label in S.labels],
            'roots': RootDatumGSp(g).as_dict(),
            'kodaira_spencer': kodaira_spencer_check(g),
            'rootspace': rootspace_analysis(g, R).as_dict(),
            'biq_subspaces': count_biq_subspaces(S, R)
        })

    def hilbert(self, g: int, types: Optional[List[Dict]] = None, relations: Optional[Dict] = None) -> Outcome:
        S = hilbert_tangent_biq(g)
        R = _relations(g, types, relations)
        return Outcome(StatusType.SUCCESS, {
            'g': g,
            'labels': [str(label) for label in S.labels],
            'symbolic': [label.symbolic() for label in S.labels],
            'restriction_check': hilbert_restriction_check(g),
            'blocks': [block for block, _ in isotypic_blocks(S, R)],
            'biq_subspaces': count_biq_subspaces(S, R)
        })

    def weyl(self, min_poly: Optional[List[int]] = None, scan: Optional[List[int]] = None) -> Outcome:
        if scan is not None:
            found = scan_weyl_quartics(*scan)
            if found is None:
                return Outcome(StatusType.INCONCLUSIVE, {'scan': scan},
                               message=f'No Weyl quartic x^4 + a x^2 + b with a <= {scan[0]}, b <= {scan[1]}')
            E, _ = found
        elif min_poly is not None:
            E = is_cm_field(min_poly)
        else:
            raise InputError('Either a minimal polynomial or a scan range is required')

        is_weyl = weyl_check(E)
        payload = {
            'field': E.as_dict(),
            'galois_order': galois_order(E),
            'weyl_order': weyl_order(E.g),
            'weyl': is_weyl
        }
        if scan is not None:
            payload['scan'] = scan
        if is_weyl:
            payload['special_subvarieties'] = [d.as_dict() for d in special_subvarieties_weyl(E)]
        return Outcome(StatusType.SUCCESS, payload)

    def verify_siegel_g1(self, tau0: str, prec_bits: int, degree_bound: int, height_bound: str) -> Outcome:
        return verify_siegel_g1(tau0, prec_bits, degree_bound, int(height_bound))

    def verify_beta_diag(self, disc: int, prec_bits: int, height_bound: str, perturb: Optional[str] = None) -> Outcome:
        return verify_beta_diag_g1(disc, prec_bits, int(height_bound),
                                   Fraction(perturb) if perturb is not None else None)

    def _falsify(self, discs: List[int], prec_bits: int, height_bound: str, variant: str, planted: bool) -> Outcome:
        thetas = [cm_theta(d, prec_bits) for d in discs]
        outcome = hasc_falsify(thetas, prec_bits, int(height_bound), variant, planted)
        outcome.payload['discriminants'] = discs
        return outcome

    def verify_falsify(self, discs: List[int], prec_bits: int, height_bound: str, planted: bool = False) -> Outcome:
        return self._falsify(discs, prec_bits, height_bound, QUADRATIC, planted)

    def verify_quasi(self, discs: List[int], prec_bits: int, height_bound: str, planted: bool = False) -> Outcome:
        return self._falsify(discs, prec_bits, height_bound, QUASI, planted)

    def verify_legendre(self, samples: int, prec_bits: int, seed: int = 0) -> Outcome:
        return legendre_check(samples, prec_bits, seed)
