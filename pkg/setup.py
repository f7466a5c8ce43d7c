from setuptools import setup, find_packages

long_description = open('README.md').read()

DEPENDENCIES = ['numpy>=1.17.0', 'pandas>=0.24', 'scipy>=1.3.0', 'tqdm>=4.32.1', 'scikit-learn>=0.21.2',
                'statsmodels>=0.10.0']

TEST_DEPENDENCIES = [
    'pytest',
    'hypothesis',
]


setup(
    name='scikit-symmetrise',
    version='0.1.0',
    packages=find_packages(include=['sksym', 'sksym.*']),
    license='MIT',
    python_requires='>=3.8',
    description='A toolbox for making functions and Markov kernels equivariant under group actions.',
    long_description=long_description,
    long_description_content_type='text/markdown',
    maintainer='sksym Developers',
    classifiers=['Intended Audience :: Science/Research',
                 'Intended Audience :: Developers',
                 'License :: OSI Approved',
                 'Programming Language :: Python',
                 'Topic :: Software Development',
                 'Topic :: Scientific/Engineering',
                 'Operating System :: Microsoft :: Windows',
                 'Operating System :: Unix',
                 'Operating System :: MacOS',
                 'Programming Language :: Python :: 3.8',
                 'Programming Language :: Python :: 3.9',
                 'Programming Language :: Python :: 3.10',
                 ],
    install_requires=DEPENDENCIES,
    extras_require={'test': TEST_DEPENDENCIES},
    entry_points={'console_scripts': ['sksym=sksym.cli:main']},
    )
