import json
from importlib import resources

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from liecoh.cli import main
from liecoh.roots import borel, build_semisimple, parabolic


@pytest.fixture(scope="session")
def a1():
    return build_semisimple("A1")


@pytest.fixture(scope="session")
def a2():
    return build_semisimple("A2")


@pytest.fixture(scope="session")
def a1_borel(a1):
    return borel(a1)


@pytest.fixture(scope="session")
def a2_borel(a2):
    return borel(a2)


@pytest.fixture(scope="session")
def a2_parabolic(a2):
    return parabolic(a2, [1])


def _schemas():
    root = resources.files("liecoh") / "schemas"
    docs = {p.name: json.loads(p.read_text()) for p in root.iterdir() if p.name.endswith(".json")}
    registry = Registry().with_resources(
        (f"liecoh/{name}", Resource.from_contents(doc)) for name, doc in docs.items()
    )
    return docs, registry


@pytest.fixture(scope="session")
def validate():
    docs, registry = _schemas()

    def check(doc, name):
        Draft202012Validator(docs[name], registry=registry).validate(doc)

    return check


@pytest.fixture
def run(capsys):
    """Run the CLI in-process; returns (exit code, stdout, stderr)."""

    def go(*argv):
        code = main(list(argv))
        out = capsys.readouterr()
        return code, out.out, out.err

    return go
