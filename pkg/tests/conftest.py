import os
from pathlib import Path

import pytest

from rollrank.ingest import Member

DATA_DIR = Path(__file__).parent / "data"

# 110th Senate, in the published domain-knowledge order (ranks 1..102).
SENATE_110 = (
    "FEINGOLD SANDERS LEAHY DURBIN HARKIN WYDEN BROWN WHITEHOUSE CARDIN MENENDEZ "
    "KERRY CANTWELL KOHL LAUTENBERG KLOBUCHAR AKAKA MURRAY SCHUMER REED BOXER "
    "BINGAMAN LEVIN STABENOW REID CASEY MIKULSKI FEINSTEIN NELSON WEBB SALAZAR "
    "TESTER INOUYE ROCKEFELLER KENNEDY CONRAD DODD DORGAN CARPER BAUCUS BIDEN "
    "MCCASKILL LINCOLN BYRD CLINTON LIEBERMAN PRYOR BAYH OBAMA LANDRIEU NELSON "
    "JOHNSON "
    "SNOWE COLLINS SPECTER SMITH COLEMAN WICKER VOINOVICH THOMAS STEVENS LUGAR "
    "MURKOWSKI DOMENICI WARNER HAGEL MCCAIN LOTT COCHRAN BENNETT HATCH BOND "
    "MARTINEZ ROBERTS ALEXANDER GRASSLEY HUTCHISON DOLE SUNUNU BROWNBACK CORKER "
    "CRAIG SHELBY CRAPO BARASSO GREGG MCCONNELL THUNE ISAKSON CHAMBLISS GRAHAM "
    "VITTER CORNYN SESSIONS BUNNING KYL ENZI BURR ALLARD ENSIGN INHOFE DEMINT "
    "COBURN"
).split()


@pytest.fixture
def senate_roster():
    return tuple(
        Member(f"S{k + 1:03d}", name, "D" if k < 51 else "R")
        for k, name in enumerate(SENATE_110)
    )


def senate_110_path():
    """Path to a 110th Senate .ord file, if one has been supplied."""
    env = os.environ.get("ROLLRANK_SENATE110_ORD")
    candidates = [Path(env)] if env else []
    candidates.append(DATA_DIR / "sen110kh.ord")
    for path in candidates:
        if path.is_file():
            return path
    return None


_ACCEPTANCE = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    outcome = None
    if call.excinfo is not None:
        if call.excinfo.errisinstance(pytest.skip.Exception):
            outcome = "SKIP"
        else:
            outcome = "FAIL"
    elif call.when == "call":
        outcome = "PASS"
    if outcome is not None:
        prev = _ACCEPTANCE.get(number, (title, "PASS"))[1]
        if prev == "FAIL":
            outcome = "FAIL"
        _ACCEPTANCE[number] = (title, outcome)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, outcome = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {outcome:4}  {title}")
