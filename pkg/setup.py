# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import codecs
import os

from setuptools import find_packages
from setuptools import setup


# read file content
def read(*parts):
    path = os.path.join(os.path.dirname(__file__), *parts)
    with codecs.open(path, encoding="utf-8") as fobj:
        return fobj.read()


# required modules
install_requires = [
    "click>=8.1.3",
    "pyyaml>=6.0",
    "numpy>=1.24",
    "scipy>=1.10",
    "setuptools_scm>=6.0.1",
]

setup(
    name="udpcert",
    use_scm_version={"root": ".", "relative_to": __file__, "local_scheme": "node-and-timestamp"},
    description="Certifier of pure multipartite states determined by their marginals",
    long_description=read("README.md"),
    long_description_content_type="text/markdown",
    author="Tomas Vitvar",
    author_email="tomas@vitvar.com",
    packages=find_packages(exclude=["tests.*", "tests"]),
    include_package_data=True,
    install_requires=install_requires,
    extras_require={"test": ["pytest>=7.2"]},
    python_requires=">=3.10",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    entry_points="""
        [console_scripts]
        udpcert=udpcert.commands.udpcert:main
    """,
)
