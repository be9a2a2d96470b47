"""
ensagg Package Setup
"""

from setuptools import find_namespace_packages, setup

VERSION = "0.1.1"

dependencies = [
    "matplotlib~=3.4",
    "numpy~=1.20",
    "pandas~=1.2",
    "scipy~=1.7",
]

test_dependencies = ["pytest~=6.2", "time-machine~=2.1"]

extras = {
    "docs": ["mkdocs~=1.1"],
    "tests": test_dependencies,
}

setup(
    name="ensagg-engine",
    version=VERSION,
    description="Aggregation and verification of deep ensemble forecast distributions",
    license="MIT",
    classifiers=[
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "License :: OSI Approved :: MIT License",
        "Topic :: Scientific/Engineering :: Atmospheric Science",
    ],
    python_requires=">= 3.8",
    install_requires=dependencies,
    packages=find_namespace_packages(include=["ensagg*"]),
    package_data={"ensagg.data": ["presets.json"]},
    tests_require=test_dependencies,
    extras_require=extras,
    entry_points={"console_scripts": ["ensagg=ensagg.cli:main"]},
)
