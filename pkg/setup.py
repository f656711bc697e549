from setuptools import setup, find_packages

setup(
    name="entrokit",
    version="1.0.0",
    description="entrokit - entropy-rate estimation toolkit (LZ match lengths, CTW, plug-in, renewal)",
    long_description=open("README.md").read() if __name__ == "__main__" else "",
    long_description_content_type="text/markdown",
    license="AGPL-3.0",
    packages=find_packages(exclude=["tests", "tests.*"]),
    python_requires=">=3.10",
    install_requires=[
        "numpy>=1.26.0,<2",
        "scipy>=1.11.0",
        "numba>=0.59.0",
        "pydantic>=2.5.0",
        "pydantic-settings>=2.1.0",
        "python-dotenv>=1.0.0",
        "openpyxl>=3.1.2",
    ],
    extras_require={
        "test": ["pytest>=7.4.3", "pytest-asyncio>=0.23.2"],
    },
    entry_points={
        "console_scripts": [
            "entrokit=entrokit.main:main",
        ],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: GNU Affero General Public License v3",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Information Analysis",
    ],
    keywords="entropy-rate lempel-ziv context-tree-weighting bootstrap information-theory",
)
