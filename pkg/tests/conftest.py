from pathlib import Path

import pytest

from citevalid.corpus import CitationEdge, Corpus, Paper, RatingRecord, load_corpus

FIXTURES = Path(__file__).parent / "fixtures"
F1 = FIXTURES / "f1"
F1_CENSUS = 2010
F1_JCR = 2010

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if not (report.when == "call" or (report.when == "setup" and report.failed)):
        return
    crit = report.user_properties and dict(report.user_properties).get("criterion")
    if crit:
        num, title = crit
        outcome = "PASS" if report.passed else "FAIL"
        prev = _criteria.get(num)
        if prev is None or prev[1] == "PASS":
            _criteria[num] = (title, outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        title, outcome = _criteria[num]
        terminalreporter.write_line(f"AC{num:<3} {outcome}  {title}")


@pytest.fixture(autouse=True)
def _record_criterion(request):
    marker = request.node.get_closest_marker("criterion")
    if marker is not None:
        request.node.user_properties.append(("criterion", tuple(marker.args)))


@pytest.fixture
def f1_corpus():
    return load_corpus(F1 / "papers.csv", F1 / "citations.csv", F1 / "ratings.csv",
                       census_year=F1_CENSUS)


def make_corpus(papers, edges=(), ratings=(), census_year=2100):
    """Build a corpus from compact tuples.

    papers: (id, journal, year, doc_type, categories-tuple-or-str)
    edges: (citing, cited); ratings: (paper, rater, score)
    """
    ps = []
    for pid, j, y, dt, cats in papers:
        if isinstance(cats, str):
            cats = (cats,)
        ps.append(Paper(pid, j, y, dt, tuple(cats)))
    return Corpus(
        ps,
        [CitationEdge(a, b) for a, b in edges],
        [RatingRecord(p, r, s) for p, r, s in ratings],
        census_year,
    )
