#!/usr/bin/env python3
"""
Unit tests for seeded verification campaigns and replay bundles
"""
import json
import unittest
from unittest import mock

from imatch.config import DEFAULT_BUDGET
from imatch.errors import PreconditionError, VersionMismatchError
from imatch.formats import load_document
from imatch.graph import S1, S2, gen_complete
from imatch.harness import (
    BLOWUP, CLIQUE_GAP, FAIL, IM_HARD, IMAGE, PASS, Instance, dump_report,
    make_instance, make_spec, replay, run_instance, spec_from_doc,
    spec_to_doc, verify
)
from tests import SLOW


class CampaignSpecUnitTests(unittest.TestCase):

    def test_defaults(self):
        spec = make_spec('image')
        self.assertIs(spec.kind, IMAGE)
        self.assertEqual((spec.trials, spec.seed, spec.workers),
                         (500, 1, 1))
        self.assertEqual(spec.budget, DEFAULT_BUDGET)
        self.assertEqual((spec.n_min, spec.n_max), (1, 9))

    def test_overrides_and_none(self):
        spec = make_spec(CLIQUE_GAP, trials=7, seed=None, k_max=None,
                         n_max=4)
        self.assertEqual((spec.trials, spec.seed, spec.k_max, spec.n_max),
                         (7, 1, 3, 4))

    def test_rejects_bad_specs(self):
        with self.assertRaises(PreconditionError):
            make_spec('image', trials=0)
        with self.assertRaises(PreconditionError):
            make_spec('im-hard', n_min=5)
        with self.assertRaises(PreconditionError):
            make_spec('ham-closure', p_min=0.0, p_max=0.0)
        with self.assertRaises(PreconditionError):
            make_spec('solvers', n_min=5, n_max=3)
        with self.assertRaises(ValueError):
            make_spec('no-such-reduction')

    def test_doc_round_trip(self):
        spec = make_spec('blowup', seed=9)
        doc = spec_to_doc(spec)
        self.assertEqual(doc['kind'], 'blowup')
        self.assertEqual(spec_from_doc(doc), spec)
        with self.assertRaises(PreconditionError):
            spec_from_doc({'kind': 'image'})


class InstanceUnitTests(unittest.TestCase):

    def test_instances_are_seeded_by_index(self):
        spec = make_spec('image', seed=40)
        first = make_instance(spec, 3)
        self.assertEqual(first, make_instance(spec, 3))
        self.assertEqual(first.seed, 43)
        self.assertEqual(first.index, 3)
        self.assertTrue(1 <= first.graph.n <= 9)

    def test_hambip_instances_are_sided(self):
        spec = make_spec('hambip-closure', n_max=3)
        for index in range(10):
            g = make_instance(spec, index).graph
            self.assertGreaterEqual(g.m, 1)
            half = g.n // 2
            self.assertEqual(g.sides, (S1,) * half + (S2,) * half)

    def test_closure_instances_have_edges(self):
        spec = make_spec('ham-closure', p_min=0.05, p_max=0.05, n_max=3)
        for index in range(10):
            self.assertGreaterEqual(make_instance(spec, index).graph.m, 1)


class CampaignUnitTests(unittest.TestCase):

    def assertCampaignPasses(self, spec):
        report = verify(spec)
        self.assertEqual(report.failed, 0, report.trials)
        self.assertEqual(report.passed + report.unknown, spec.trials)
        self.assertIsNone(report.first_failure)
        self.assertTrue(report.ok)
        self.assertEqual([t.index for t in report.trials],
                         list(range(spec.trials)))
        return report

    def test_solvers(self):
        report = self.assertCampaignPasses(
            make_spec('solvers', trials=25, n_max=8))
        self.assertEqual(report.unknown, 0)

    def test_clique_gap(self):
        self.assertCampaignPasses(make_spec('clique-gap', trials=25,
                                            n_max=6))

    def test_image(self):
        self.assertCampaignPasses(make_spec('image', trials=25, n_max=6))

    def test_ham_closure(self):
        self.assertCampaignPasses(make_spec('ham-closure', trials=20,
                                            n_max=6))

    def test_hambip_closure(self):
        self.assertCampaignPasses(make_spec('hambip-closure', trials=15,
                                            n_max=3))

    def test_blowup(self):
        report = self.assertCampaignPasses(make_spec('blowup', trials=2))
        for trial in report.trials:
            self.assertIn('homogeneous', trial.census)

    def test_im_hard_instance(self):
        spec = make_spec('im-hard', budget=2000)
        result = run_instance(spec, Instance(0, 1, gen_complete(7), 1))
        self.assertIs(result.outcome, PASS, result.message)
        self.assertTrue(result.values['yes_instance'])
        # the decision solver ran and its witness read back as a triangle
        self.assertEqual(result.values['verdict'], 'yes')
        self.assertEqual(len(result.witness), 18)
        self.assertIsNone(result.bundle)

    def test_budget_exhaustion_is_unknown(self):
        spec = make_spec('solvers', trials=5, n_min=8, n_max=8, p_min=0.5,
                         p_max=0.5, budget=1)
        report = verify(spec)
        self.assertGreaterEqual(report.unknown, 1)
        self.assertEqual(report.failed, 0)
        for trial in report.trials:
            if trial.outcome is not PASS:
                self.assertEqual(trial.bundle['kind'], 'solvers')

    def test_blowup_bound_is_checked(self):
        with mock.patch('imatch.approx.blowup_to_mis', return_value=[]):
            report = verify(make_spec('blowup', trials=1))
        self.assertEqual(report.failed, 1)
        self.assertIn('blowup_to_mis kept 0', report.trials[0].message)

    def test_unexpected_errors_fail_the_trial(self):
        spec = make_spec('image', trials=2, n_min=3, n_max=4)
        with mock.patch('imatch.approx.matching_to_mis',
                        side_effect=RuntimeError('boom')):
            report = verify(spec)
            result = run_instance(spec, make_instance(spec, 0))
        self.assertEqual((report.failed, report.first_failure), (2, 0))
        self.assertIs(result.outcome, FAIL)
        self.assertIn('RuntimeError: boom', result.message)
        self.assertEqual(result.bundle['kind'], 'image')

    def test_workers_agree_with_inline_run(self):
        inline = verify(make_spec('image', trials=6, n_max=6))
        pooled = verify(make_spec('image', trials=6, n_max=6, workers=2))
        self.assertEqual([t.values for t in inline.trials],
                         [t.values for t in pooled.trials])
        self.assertEqual(pooled.passed, 6)


class FailureReplayUnitTests(unittest.TestCase):

    def setUp(self):
        spec = make_spec('image', trials=3, n_min=3, n_max=5)
        with mock.patch('imatch.approx.matching_to_mis', return_value=[]):
            self.report = verify(spec)

    def test_broken_map_fails_with_bundles(self):
        report = self.report
        self.assertEqual(report.failed, 3)
        self.assertEqual(report.first_failure, 0)
        self.assertFalse(report.ok)
        trial = report.trials[0]
        self.assertIs(trial.outcome, FAIL)
        self.assertIn('approx', trial.message)
        self.assertEqual(trial.bundle['version'], 'imatch/1')
        self.assertEqual(trial.bundle['seed'], 1)

    def test_replay_from_dict_and_text(self):
        bundle = self.report.trials[1].bundle
        again = replay(bundle)
        self.assertEqual((again.passed, again.failed), (1, 0))
        self.assertEqual(again.trials[0].index, 1)
        self.assertEqual(replay(json.dumps(bundle)).passed, 1)

    def test_replay_rejects_foreign_versions(self):
        bundle = dict(self.report.trials[0].bundle, version='imatch/0')
        with self.assertRaises(VersionMismatchError):
            replay(bundle)
        with self.assertRaises(VersionMismatchError):
            replay(json.dumps(bundle))
        with self.assertRaises(PreconditionError):
            replay({'version': 'imatch/1'})

    def test_report_document(self):
        doc = load_document(dump_report(self.report), 'report')
        self.assertEqual(doc['reduction'], 'image')
        self.assertEqual((doc['passed'], doc['failed']), (0, 3))
        self.assertEqual(doc['trials'][0]['outcome'], 'fail')
        self.assertEqual(doc['trials'][0]['bundle']['kind'], 'image')


@unittest.skipUnless(SLOW, 'set IMATCH_SLOW_TESTS=1')
class ImHardCampaignSlowTests(unittest.TestCase):

    def test_campaign(self):
        report = verify(make_spec(IM_HARD, trials=4))
        self.assertEqual(report.failed, 0)

    def test_blowup_of_three_vertices(self):
        report = verify(make_spec(BLOWUP, trials=1, n_min=3, n_max=3))
        self.assertEqual(report.failed, 0)


if __name__ == '__main__':
    unittest.main()
