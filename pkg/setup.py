from setuptools import setup, find_packages
from os import path

here = path.abspath(path.dirname(__file__))
with open(path.join(here, "README.md"), encoding="utf-8") as f:
    long_description = f.read()

version = {}
exec(open("radicsum/version.py", "r").read(), version)

setup(
    name="radicsum",
    version=version["__version__"],
    description="Closed-form sums of r'th roots and the factorial formulas derived from them",
    long_description=long_description,
    long_description_content_type="text/markdown",
    install_requires=[
        "click>=8.2",
        "rich",
        "numpy",
        "xarray",
        "pandas>=1.5",
        "pyyaml",
    ],
    extras_require={
        "test": ["pytest", "hypothesis", "scipy"],
        "docs": ["jupyter-book"],
    },
    packages=find_packages(exclude=["test", "test.*"]),
    python_requires=">=3.10",
    entry_points={
        "console_scripts": ["radicsum=radicsum.cli:radicsum"],
    },
)
