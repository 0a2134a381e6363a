"""Permuted non-negative matrix factorization library and CLI."""
import setuptools
from setuptools import setup

# Read the README as long description (used with pypi)
with open("README_PYPI.md", "r") as fh:
    long_description = fh.read()

setup(
    name="permnmf",
    version="0.1.0",
    author="Robert Wiewel",
    author_email="dev@ducktec.de",
    description="Permuted NMF: volume-reducing permutations, elastic "
    "distance clustering and volume-based rank estimation",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license='MIT',
    keywords="nmf, non-negative-matrix-factorization, clustering, "
    "archetypes, rank-selection",
    python_requires='>=3.8.0',
    packages=setuptools.find_packages(exclude=['tests', 'tests.*']),
    install_requires=[
        'numpy>=1.17, <3.0',
        'pandas>=1.5, <3.0',
        'matplotlib>=3.3, <4.0',
        'tqdm>=4.0, <5.0',
        'jsonschema>=3.0, <5.0'],
    extras_require={
        'dev': [
            'pytest>=6.0',
            'Sphinx>=4.0',
            'sphinx_rtd_theme>=1.0',
            'pylint>=2.0',
            'pydocstyle>=5.0',
            'termcolor>=1.0, <3.0'
        ]
    },
    entry_points={
        'console_scripts': ['permnmf=permnmf.cli:main'],
    },
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Developers',
        'Intended Audience :: Education',
        'Intended Audience :: Science/Research',
        'Natural Language :: English',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
